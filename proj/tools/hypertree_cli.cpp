// Command-line front end: every subcommand reads/writes the JSON formats of
// the library and prints exactly one JSON document to stdout.  Exit codes:
// 0 ok, 2 input error, 3 precondition error, 4 budget exhausted, 5 internal
// consistency failure.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ht/canonical.hpp"
#include "ht/constructions.hpp"
#include "ht/divisor.hpp"
#include "ht/enumerate.hpp"
#include "ht/errors.hpp"
#include "ht/hypertree.hpp"
#include "ht/json_io.hpp"
#include "ht/poly.hpp"
#include "ht/pullback.hpp"
#include "ht/realize.hpp"
#include "ht/stable_curve.hpp"
#include "ht/triangulation.hpp"
#include "ht/util.hpp"

namespace {

using ht::ordered_json;

void print_document(const ordered_json& j) {
    std::fputs(j.dump(2).c_str(), stdout);
    std::fputc('\n', stdout);
}

void print_ok(const std::string& schema, const ordered_json& payload) {
    ordered_json env;
    env["schema"] = schema;
    env["status"] = "ok";
    for (const auto& [key, value] : payload.items()) env[key] = value;
    print_document(env);
}

int print_error(const std::string& type, const std::string& message, int code) {
    ordered_json env;
    env["schema"] = "error/v1";
    env["status"] = "error";
    env["error"] = {{"type", type}, {"message", message}};
    print_document(env);
    return code;
}

// ---------------------------------------------------------------------------
// Subcommand payloads
// ---------------------------------------------------------------------------

ordered_json run_check(const std::string& file) {
    ht::Hypertree h = ht::hypertree_from_json(ht::load_json_file(file));
    ht::ValidationReport report = ht::validate(h);
    ordered_json payload = ht::hypertree_to_json(h);
    payload["validation"] = ht::validation_to_json(report);
    std::vector<int> val = ht::valences(h);
    payload["valences"] = std::vector<int>(val.begin() + 1, val.end());
    payload["wheels"] = ht::wheels(h);
    if (report.irreducible && h.all_triples())
        payload["generic"] = ht::is_generic(h);
    else
        payload["generic"] = nullptr;
    return payload;
}

ordered_json run_enumerate(int n, const std::string& out_dir) {
    std::vector<ht::CanonicalHypertree> classes = ht::enumerate_irreducible(n);
    ordered_json payload;
    payload["n"] = n;
    payload["count"] = classes.size();
    if (!out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::path dir = fs::path(out_dir) / ("n" + std::to_string(n));
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw ht::input_error("cannot create directory: " + dir.string());
        ordered_json index;
        index["n"] = n;
        index["count"] = classes.size();
        ordered_json rows = ordered_json::array();
        for (const auto& entry : classes) {
            const std::string name =
                ht::hex64(ht::fnv1a64(ht::certificate(entry.hypertree))) + ".json";
            ordered_json cls = ht::hypertree_to_json(entry.hypertree);
            cls["automorphisms"] = entry.automorphism_order;
            ht::save_json_file((dir / name).string(), cls);
            rows.push_back({{"file", name}, {"automorphisms", entry.automorphism_order}});
        }
        index["classes"] = std::move(rows);
        ht::save_json_file((dir / "index.json").string(), index);
        payload["out"] = dir.string();
    }
    return payload;
}

ordered_json run_fib(const std::string& file, int vertex, int partner,
                     std::optional<int> role) {
    ht::Hypertree h = ht::hypertree_from_json(ht::load_json_file(file));
    return ht::hypertree_to_json(ht::fibonacci_extend(h, vertex, partner, role));
}

ordered_json run_class(const std::string& file) {
    ht::Hypertree h = ht::hypertree_from_json(ht::load_json_file(file));
    return ht::class_to_json(ht::class_coefficients(h));
}

ordered_json run_equation(const std::string& file) {
    ht::Hypertree h = ht::hypertree_from_json(ht::load_json_file(file));
    return ht::polynomial_to_json(ht::hypertree_equation(h));
}

ordered_json run_compare(const std::string& file_a, const std::string& file_b) {
    ht::Hypertree a = ht::hypertree_from_json(ht::load_json_file(file_a));
    ht::Hypertree b = ht::hypertree_from_json(ht::load_json_file(file_b));
    const char* verdict = nullptr;
    switch (ht::same_divisor(a, b)) {
        case ht::SameDivisorVerdict::equal_identical: verdict = "equal_identical"; break;
        case ht::SameDivisorVerdict::equal_spherical: verdict = "equal_spherical"; break;
        case ht::SameDivisorVerdict::distinct: verdict = "distinct"; break;
        case ht::SameDivisorVerdict::undecided: verdict = "undecided"; break;
    }
    ordered_json payload;
    payload["verdict"] = verdict;
    return payload;
}

ordered_json run_assemble(const std::string& black_file, const std::string& white_file) {
    ht::Hypertree black = ht::hypertree_from_json(ht::load_json_file(black_file));
    ht::Hypertree white = ht::hypertree_from_json(ht::load_json_file(white_file));
    std::optional<ht::BicoloredTriangulation> t = ht::assemble_triangulation(black, white);
    if (!t)
        throw ht::precondition_error(
            "the two hypertrees do not assemble into a bicolored sphere triangulation");
    return ht::triangulation_to_json(*t);
}

ordered_json run_realize(const std::string& file, std::uint64_t seed, int bits,
                         double tol_col, double tol_gen) {
    ht::Hypertree h = ht::hypertree_from_json(ht::load_json_file(file));
    ht::RealizationOptions opt;
    opt.seed = seed;
    opt.bits = bits;
    opt.tol_collinear = tol_col;
    opt.tol_generic = tol_gen;
    ht::Realization r = ht::realize(h, opt);
    ht::RealizationCheck check =
        ht::verify_realization(h, r, opt.tol_collinear, opt.tol_generic, opt.tol_residual);
    ordered_json payload = ht::realization_to_json(r);
    payload["check"] = ht::realization_check_to_json(check);
    return payload;
}

ordered_json run_stability(const std::string& file) {
    ht::Hypertree h = ht::hypertree_from_json(ht::load_json_file(file));
    ht::StableCurveGraph g = ht::stable_model(h);
    std::vector<int> multidegree = ht::canonical_multidegree(g);
    ordered_json payload;
    payload["n"] = h.n();
    payload["black_components"] = g.black_count;
    payload["white_components"] = g.white_count();
    payload["nodes"] = g.nodes.size();
    payload["multidegree"] = multidegree;
    payload["stable"] = ht::gieseker_stable(g, multidegree);
    return payload;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypertree: combinatorics, defining equations, divisor classes, and\n"
                 "planar realizations of hypertrees, with JSON output on stdout"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads,
                   "cap on worker threads (this build computes serially)");

    // check
    auto* cmd_check = app.add_subcommand("check",
        "validate a hypertree file; report valences, wheels, and genericity");
    std::string check_file;
    cmd_check->add_option("file", check_file, "hypertree JSON file")->required();

    // enumerate
    auto* cmd_enum = app.add_subcommand("enumerate",
        "list all irreducible hypertree classes on n vertices");
    int enum_n = 0;
    std::string enum_out;
    cmd_enum->add_option("--n", enum_n, "ground set size (4..12)")->required();
    cmd_enum->add_option("--out", enum_out,
                         "directory to write one file per class plus index.json");

    // sphere
    auto* cmd_sphere = app.add_subcommand("sphere",
        "build a bicolored sphere triangulation or split one into hypertrees");
    bool sphere_octa = false;
    int sphere_bipyramid = 0;
    std::string sphere_quadruple, sphere_split;
    cmd_sphere->add_flag("--octahedron", sphere_octa, "the bicolored octahedron");
    cmd_sphere->add_option("--bipyramid", sphere_bipyramid,
                           "bipyramid over a 2k-cycle, k >= 3");
    cmd_sphere->add_option("--quadruple", sphere_quadruple,
                           "midpoint refinement of the triangulation in this file");
    cmd_sphere->add_option("--split", sphere_split,
                           "extract the black/white hypertrees of the triangulation in this file");

    // assemble
    auto* cmd_assemble = app.add_subcommand("assemble",
        "pair a black and a white hypertree into a sphere triangulation");
    std::string assemble_black, assemble_white;
    cmd_assemble->add_option("black", assemble_black, "black hypertree JSON file")->required();
    cmd_assemble->add_option("white", assemble_white, "white hypertree JSON file")->required();

    // fib
    auto* cmd_fib = app.add_subcommand("fib",
        "extend a hypertree by one vertex at a valence-2 vertex");
    std::string fib_file;
    int fib_vertex = 0, fib_partner = 0, fib_role = 0;
    bool fib_role_set = false;
    cmd_fib->add_option("file", fib_file, "hypertree JSON file")->required();
    cmd_fib->add_option("--vertex", fib_vertex, "valence-2 vertex to extend at")->required();
    cmd_fib->add_option("--partner", fib_partner,
                        "vertex outside both triples through --vertex")->required();
    cmd_fib->add_option("--role", fib_role,
                        "member of the modified triple selecting which triple is rewritten")
        ->each([&](const std::string&) { fib_role_set = true; });

    // class
    auto* cmd_class = app.add_subcommand("class",
        "divisor class coefficients of an irreducible hypertree");
    std::string class_file;
    cmd_class->add_option("file", class_file, "hypertree JSON file")->required();

    // equation
    auto* cmd_equation = app.add_subcommand("equation",
        "canonical defining polynomial of an irreducible all-triples hypertree");
    std::string equation_file;
    cmd_equation->add_option("file", equation_file, "hypertree JSON file")->required();

    // compare
    auto* cmd_compare = app.add_subcommand("compare",
        "decide whether two hypertrees cut the same divisor");
    std::string compare_a, compare_b;
    cmd_compare->add_option("a", compare_a, "first hypertree JSON file")->required();
    cmd_compare->add_option("b", compare_b, "second hypertree JSON file")->required();

    // realize
    auto* cmd_realize = app.add_subcommand("realize",
        "place points in the plane realizing the hypertree's collinearities");
    std::string realize_file;
    std::uint64_t realize_seed = 1;
    int realize_bits = 256;
    double realize_tol_col = 1e-9, realize_tol_gen = 1e-6;
    cmd_realize->add_option("file", realize_file, "hypertree JSON file")->required();
    cmd_realize->add_option("--seed", realize_seed, "deterministic seed (default 1)");
    cmd_realize->add_option("--bits", realize_bits, "working precision in bits (default 256)");
    cmd_realize->add_option("--tol-col", realize_tol_col,
                            "collinearity tolerance (default 1e-9)");
    cmd_realize->add_option("--tol-gen", realize_tol_gen,
                            "genericity tolerance (default 1e-6)");

    // pullback
    auto* cmd_pullback = app.add_subcommand("pullback",
        "named divisor polynomials, their diagonal multiplicity tables, and classes");
    std::string pullback_example, pullback_emit;
    long long pullback_budget = 0;
    cmd_pullback->add_option("--example", pullback_example,
                             "one of: weierstrass, bitangent, trigonal")->required();
    cmd_pullback->add_option("--emit", pullback_emit, "one of: poly, table, class")->required();
    cmd_pullback->add_option("--budget", pullback_budget,
                             "abort once any polynomial exceeds this many terms");

    // stability
    auto* cmd_stability = app.add_subcommand("stability",
        "canonical multidegree stability of the hypertree's nodal curve");
    std::string stability_file;
    cmd_stability->add_option("file", stability_file, "hypertree JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // plain-text help on stdout
    } catch (const CLI::ParseError& e) {
        return print_error("input", e.what(), 2);
    }

    try {
        if (app.got_subcommand(cmd_check)) {
            print_ok("check/v1", run_check(check_file));
        } else if (app.got_subcommand(cmd_enum)) {
            print_ok("enumerate/v1", run_enumerate(enum_n, enum_out));
        } else if (app.got_subcommand(cmd_sphere)) {
            const int chosen = int(sphere_octa) + int(sphere_bipyramid > 0) +
                               int(!sphere_quadruple.empty()) + int(!sphere_split.empty());
            if (chosen != 1)
                throw ht::input_error(
                    "pick exactly one of --octahedron, --bipyramid, --quadruple, --split");
            if (!sphere_split.empty()) {
                ht::BicoloredTriangulation t =
                    ht::triangulation_from_json(ht::load_json_file(sphere_split));
                auto [black, white] = ht::black_white_hypertrees(t);
                ordered_json payload;
                payload["n"] = t.n;
                payload["black"] = ht::hypertree_to_json(black);
                payload["white"] = ht::hypertree_to_json(white);
                print_ok("split/v1", payload);
            } else {
                ht::BicoloredTriangulation t =
                    sphere_octa ? ht::octahedron()
                    : sphere_bipyramid > 0
                        ? ht::bipyramid(sphere_bipyramid)
                        : ht::quadruple(ht::triangulation_from_json(
                              ht::load_json_file(sphere_quadruple)));
                print_ok("triangulation/v1", ht::triangulation_to_json(t));
            }
        } else if (app.got_subcommand(cmd_assemble)) {
            print_ok("triangulation/v1", run_assemble(assemble_black, assemble_white));
        } else if (app.got_subcommand(cmd_fib)) {
            std::optional<int> role;
            if (fib_role_set) role = fib_role;
            print_ok("hypertree/v1", run_fib(fib_file, fib_vertex, fib_partner, role));
        } else if (app.got_subcommand(cmd_class)) {
            print_ok("kapranov-class/v1", run_class(class_file));
        } else if (app.got_subcommand(cmd_equation)) {
            print_ok("equation/v1", run_equation(equation_file));
        } else if (app.got_subcommand(cmd_compare)) {
            print_ok("compare/v1", run_compare(compare_a, compare_b));
        } else if (app.got_subcommand(cmd_realize)) {
            print_ok("realization/v1",
                     run_realize(realize_file, realize_seed, realize_bits,
                                 realize_tol_col, realize_tol_gen));
        } else if (app.got_subcommand(cmd_pullback)) {
            if (pullback_budget > 0) {
                // Takes effect process-wide; must happen before any
                // polynomial arithmetic.
                setenv("HYPERTREE_BUDGET_TERMS", std::to_string(pullback_budget).c_str(), 1);
            }
            ht::Poly f = [&] {
                if (pullback_example == "weierstrass") return ht::weierstrass_polynomial();
                if (pullback_example == "bitangent") return ht::bitangent_polynomial();
                if (pullback_example == "trigonal") return ht::transversal_polynomial();
                throw ht::input_error("unknown example: " + pullback_example +
                                      " (expected weierstrass, bitangent, or trigonal)");
            }();
            if (pullback_emit == "poly") {
                print_ok("polynomial/v1", ht::polynomial_to_json(f));
            } else if (pullback_emit == "table") {
                print_ok("multiplicity-table/v1", ht::table_to_json(ht::multiplicity_table(f)));
            } else if (pullback_emit == "class") {
                ht::DiagonalMultiplicityTable t = ht::multiplicity_table(f);
                ht::KapranovClass c =
                    pullback_example == "trigonal"
                        ? ht::fm_to_kapranov(ht::extend_with_dummy(t), t.n + 1)
                        : ht::fm_to_kapranov(t, 7);
                print_ok("kapranov-class/v1", ht::class_to_json(c));
            } else {
                throw ht::input_error("unknown emit target: " + pullback_emit +
                                      " (expected poly, table, or class)");
            }
        } else if (app.got_subcommand(cmd_stability)) {
            print_ok("stability/v1", run_stability(stability_file));
        }
    } catch (const ht::input_error& e) {
        return print_error("input", e.what(), 2);
    } catch (const ht::precondition_error& e) {
        return print_error("precondition", e.what(), 3);
    } catch (const ht::budget_error& e) {
        return print_error("budget", e.what(), 4);
    } catch (const ht::internal_error& e) {
        return print_error("internal", e.what(), 5);
    } catch (const std::exception& e) {
        return print_error("internal", e.what(), 5);
    }
    return 0;
}
