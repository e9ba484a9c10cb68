#pragma once
#include <vector>

#include "ht/canonical.hpp"
#include "ht/hypertree.hpp"

namespace ht {

// All irreducible hypertrees on {1..n} up to relabeling, one canonical
// representative per class, in lexicographic order of their edge sequences.
// Supported range: 4 <= n <= 12 (the search is exhaustive and exact).
// Generation is orderly: partial edge sequences are grown in lexicographic
// order and pruned unless canonically labeled, which visits every class
// exactly once.
std::vector<CanonicalHypertree> enumerate_irreducible(int n);

} // namespace ht
