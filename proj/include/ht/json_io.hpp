#pragma once
#include <string>
#include <vector>

#include "json.hpp"

#include "ht/divisor.hpp"
#include "ht/hypertree.hpp"
#include "ht/poly.hpp"
#include "ht/pullback.hpp"
#include "ht/realize.hpp"
#include "ht/triangulation.hpp"

namespace ht {

// Key-order-preserving JSON document; every serializer below emits keys in a
// fixed order so that outputs are byte-stable.
using ordered_json = nlohmann::ordered_json;

// Parse/IO helpers.  Malformed text, unreadable paths, and unwritable paths
// all surface as input_error; nothing else is thrown.
ordered_json parse_json_text(const std::string& text);
ordered_json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const ordered_json& j);

// Hypertree files: {"n": 7, "edges": [[1,2,7],[3,4,7],...]} with 1-based
// labels.  The writer emits each edge ascending and the list sorted (the
// Hypertree invariant); the reader accepts edges in any order, tolerates
// extra keys, and delegates all structural rules to Hypertree::create.
ordered_json hypertree_to_json(const Hypertree& h);
Hypertree hypertree_from_json(const ordered_json& j);

// Triangulation files: {"n": 6, "black": [[1,3,5],...], "white": [...]}
// with the same conventions.
ordered_json triangulation_to_json(const BicoloredTriangulation& t);
BicoloredTriangulation triangulation_from_json(const ordered_json& j);

// Report and result payloads (serialization only; nothing reads these back).
ordered_json validation_to_json(const ValidationReport& r);
// {"n": 8, "marking": 8, "d": 4, "m": {"1": {"exact": 3}, ...}} with subset
// keys comma-joined ascending and entries tagged exact / lower_bound.
ordered_json class_to_json(const KapranovClass& c);
// {"n": 7, "entries": {"1,2": 0, ...}} over all subsets of size >= 2, in
// ascending bitmask order.
ordered_json table_to_json(const DiagonalMultiplicityTable& t);
// {"variables": 7, "degree": 9, "terms": 330, "text": "..."} with the text
// in the canonical graded-lex form of Poly::to_string.
ordered_json polynomial_to_json(const Poly& p);
ordered_json realization_to_json(const Realization& r);
ordered_json realization_check_to_json(const RealizationCheck& c);

// "1,3,5" for {1,3,5}; the inverse of nothing — keys are write-only.
std::string joined_labels(const std::vector<int>& labels);

} // namespace ht
