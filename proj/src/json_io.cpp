#include "ht/json_io.hpp"

#include <fstream>
#include <sstream>

#include "ht/errors.hpp"

namespace ht {
namespace {

int get_int(const ordered_json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw input_error(std::string("missing field \"") + key + "\"");
    const auto& v = j.at(key);
    if (!v.is_number_integer())
        throw input_error(std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

std::vector<std::vector<int>> get_label_lists(const ordered_json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw input_error(std::string("missing field \"") + key + "\"");
    const auto& v = j.at(key);
    if (!v.is_array())
        throw input_error(std::string("field \"") + key + "\" must be an array");
    std::vector<std::vector<int>> out;
    for (const auto& row : v) {
        if (!row.is_array())
            throw input_error(std::string("entries of \"") + key + "\" must be arrays");
        std::vector<int> labels;
        for (const auto& cell : row) {
            if (!cell.is_number_integer())
                throw input_error(std::string("labels in \"") + key + "\" must be integers");
            labels.push_back(cell.get<int>());
        }
        out.push_back(std::move(labels));
    }
    return out;
}

} // namespace

std::string joined_labels(const std::vector<int>& labels) {
    std::ostringstream out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out << ",";
        out << labels[i];
    }
    return out.str();
}

ordered_json parse_json_text(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("invalid JSON: ") + e.what());
    }
}

ordered_json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw input_error("cannot read file: " + path);
    return parse_json_text(buf.str());
}

void save_json_file(const std::string& path, const ordered_json& j) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot open file for writing: " + path);
    out << j.dump(2) << "\n";
    out.flush();
    if (!out) throw input_error("cannot write file: " + path);
}

ordered_json hypertree_to_json(const Hypertree& h) {
    ordered_json j;
    j["n"] = h.n();
    j["edges"] = h.edges();
    return j;
}

Hypertree hypertree_from_json(const ordered_json& j) {
    if (!j.is_object()) throw input_error("hypertree JSON must be an object");
    return Hypertree::create(get_int(j, "n"), get_label_lists(j, "edges"));
}

ordered_json triangulation_to_json(const BicoloredTriangulation& t) {
    ordered_json j;
    j["n"] = t.n;
    j["black"] = t.black;
    j["white"] = t.white;
    return j;
}

BicoloredTriangulation triangulation_from_json(const ordered_json& j) {
    if (!j.is_object()) throw input_error("triangulation JSON must be an object");
    return BicoloredTriangulation::create(get_int(j, "n"), get_label_lists(j, "black"),
                                          get_label_lists(j, "white"));
}

ordered_json validation_to_json(const ValidationReport& r) {
    ordered_json j;
    j["has_min_size"] = r.has_min_size;
    j["covers_twice"] = r.covers_twice;
    j["normalization"] = r.normalization;
    j["convexity"] = r.convexity;
    j["irreducible"] = r.irreducible;
    j["valid"] = r.all();
    if (!r.witness.empty()) j["witness"] = r.witness;
    if (!r.witness_labels.empty()) j["witness_labels"] = r.witness_labels;
    return j;
}

ordered_json class_to_json(const KapranovClass& c) {
    ordered_json j;
    j["n"] = c.n;
    j["marking"] = c.marking;
    j["d"] = c.d;
    ordered_json m = ordered_json::object();
    for (const auto& [key, e] : c.m) {
        ordered_json cell;
        cell[e.kind == ClassEntry::Kind::exact ? "exact" : "lower_bound"] = e.value;
        m[joined_labels(key)] = std::move(cell);
    }
    j["m"] = std::move(m);
    return j;
}

ordered_json table_to_json(const DiagonalMultiplicityTable& t) {
    ordered_json j;
    j["n"] = t.n;
    ordered_json entries = ordered_json::object();
    for (std::uint32_t mask = 0; mask < t.entries.size(); ++mask) {
        if (__builtin_popcount(mask) < 2) continue;
        entries[joined_labels(mask_labels(mask))] = t.entries[mask];
    }
    j["entries"] = std::move(entries);
    return j;
}

ordered_json polynomial_to_json(const Poly& p) {
    ordered_json j;
    j["variables"] = p.context().size();
    j["degree"] = p.degree();
    j["terms"] = p.terms().size();
    j["text"] = p.to_string();
    return j;
}

ordered_json realization_to_json(const Realization& r) {
    ordered_json j;
    j["n"] = r.n;
    j["seed"] = r.seed;
    j["bits"] = r.bits;
    j["attempts"] = r.attempts;
    j["x"] = r.x;
    j["y"] = r.y;
    return j;
}

ordered_json realization_check_to_json(const RealizationCheck& c) {
    ordered_json j;
    j["collinear_ok"] = c.collinear_ok;
    j["generic_ok"] = c.generic_ok;
    j["residual_ok"] = c.residual_ok;
    j["worst_collinear"] = c.worst_collinear;
    j["worst_generic"] = c.worst_generic;
    j["equation_residual"] = c.equation_residual;
    if (!c.collinear_witness.empty()) j["collinear_witness"] = c.collinear_witness;
    if (!c.generic_witness.empty()) j["generic_witness"] = c.generic_witness;
    j["ok"] = c.ok();
    return j;
}

} // namespace ht
