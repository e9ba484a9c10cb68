#pragma once
#include <cstdint>
#include <string>

#include "ht/hypertree.hpp"

namespace ht {

struct CanonicalHypertree {
    Hypertree hypertree;                 // lexicographically least relabeling
    std::uint64_t automorphism_order = 1;
};

// Least relabeling of h under all permutations of {1..n}: the edge sequence
// (each edge an ascending tuple, the list sorted, tuples compared
// lexicographically with shorter-prefix-smaller) is minimized.  Also counts
// the automorphisms of h.  Labels not covered by any hyperedge are moved to
// the end and contribute a factorial factor to the automorphism count.
CanonicalHypertree canonical_form(const Hypertree& h);

// True iff h already carries its canonical labeling.  Decides canonicity
// without constructing the full form; used as the generation filter.
bool is_canonically_labeled(const Hypertree& h);

// Byte string identifying the isomorphism class: vertex count plus the
// canonical edge sequence.
std::string certificate(const Hypertree& h);

// Certificate equality.  Comparing hypertrees with different vertex counts is
// a structural error rather than a negative answer.
bool is_isomorphic(const Hypertree& a, const Hypertree& b);

} // namespace ht
