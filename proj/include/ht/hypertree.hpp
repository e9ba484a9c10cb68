#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ht/errors.hpp"

namespace ht {

// ---------------------------------------------------------------------------
// Hypertree
// ---------------------------------------------------------------------------
// A labeled collection of hyperedges on the ground set {1..n}.  Structural
// invariants enforced at creation: every hyperedge has at least 3 distinct
// labels in range, and no hyperedge is contained in another (duplicates are a
// special case).  Hyperedges and the edge list are kept sorted, so two
// structurally equal objects compare equal.
class Hypertree {
public:
    static Hypertree create(int n, std::vector<std::vector<int>> edges);

    int n() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::vector<int>>& edges() const { return edges_; }
    const std::vector<int>& edge(int i) const { return edges_[i]; }
    // Bitmask of edge i (bit v-1 represents label v).
    std::uint32_t edge_mask(int i) const { return masks_[i]; }
    bool all_triples() const;

    bool operator==(const Hypertree& o) const { return n_ == o.n_ && edges_ == o.edges_; }
    bool operator!=(const Hypertree& o) const { return !(*this == o); }

private:
    int n_ = 0;
    std::vector<std::vector<int>> edges_;
    std::vector<std::uint32_t> masks_;
};

// Number of hyperedges containing each label; entry [v] for v in 1..n
// (index 0 unused).
std::vector<int> valences(const Hypertree& h);

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------
// Flags are computed independently:
//  - has_min_size:  every hyperedge has >= 3 vertices,
//  - covers_twice:  every label lies in >= 2 hyperedges,
//  - normalization: sum of (|e|-2) equals n-2,
//  - convexity:     |union over S| - 2 >= sum over S of (|e|-2) for every
//                   nonempty sub-collection S of hyperedges,
//  - irreducible:   convexity holds with strict inequality whenever
//                   1 < |S| < edge_count (plus all other flags).
// When convexity or irreducibility fails, `witness` holds a violating set of
// edge indices that is minimal by size, then lexicographically smallest.
// When has_min_size or covers_twice fails, `witness_labels` holds the
// offending vertex labels.
struct ValidationReport {
    bool has_min_size = false;
    bool covers_twice = false;
    bool normalization = false;
    bool convexity = false;
    bool irreducible = false;
    std::vector<int> witness;         // edge indices
    std::vector<int> witness_labels;  // vertex labels
    bool all() const {
        return has_min_size && covers_twice && normalization && convexity && irreducible;
    }
};

ValidationReport validate(const Hypertree& h);

// ---------------------------------------------------------------------------
// Subset collections (the result of contracting / restricting a hypertree)
// ---------------------------------------------------------------------------
// A finite family of distinct subsets (each of size >= 3) of an arbitrary
// integer ground set.  Label 0 is conventionally the point that a contracted
// complement collapses to.
struct SubsetCollection {
    std::vector<int> ground;               // sorted distinct labels
    std::vector<std::vector<int>> parts;   // sorted subsets, list sorted, dedup

    static SubsetCollection create(std::vector<int> ground,
                                   std::vector<std::vector<int>> parts);
};

// Largest total weight sum(|g|-2) over sub-collections of distinct subsets
// g (|g| >= 3) of the parts -- several subsets may come from one part -- that
// satisfy the convexity inequality |union| - 2 >= sum(|g|-2) for every
// nonempty sub-family.  The capacity of an empty collection is 0, a hypertree
// on n vertices has capacity n-2, and capacity never exceeds |ground| - 2.
int capacity(const SubsetCollection& c);

// Contraction: keep labels of I, collapse the complement of I to the single
// point 0, drop collapsed parts of size < 3.  I must be a nonempty subset of
// {1..n}.  The point 0 appears in the ground set only when some part reaches
// it.  contract(h, {1..n}) returns the hypertree's own edge collection.
SubsetCollection contract(const Hypertree& h, const std::vector<int>& I);

// Restriction: intersect every hyperedge with the complement of I and keep
// intersections of size >= 3; the result lives on the complement of I.
SubsetCollection restrict_away(const Hypertree& h, const std::vector<int>& I);

// Closed-form total weight of the restriction: sum over hyperedges e with
// |e minus I| >= 3 of (|e minus I| - 2).  Agrees with capacity(restrict).
int restricted_capacity(const Hypertree& h, const std::vector<int>& I);

// Triples {i,j,k} that lie in no hyperedge while all three of their pairs lie
// in hyperedges.  Result sorted lexicographically.
std::vector<std::vector<int>> wheels(const Hypertree& h);

// True when for every triple t that is neither a hyperedge nor a wheel the
// contraction onto the complement of t has full capacity n-4.  Requires an
// irreducible hypertree with all hyperedges of size 3.
bool is_generic(const Hypertree& h);

// Whether the boundary stratum indexed by I (1 <= |I| <= n-2) is contracted:
// true unless the complement of I has exactly 2 elements or lies inside a
// hyperedge.
bool is_boundary_contracted(const Hypertree& h, const std::vector<int>& I);

// Helpers shared across modules.
std::uint32_t label_set_mask(int n, const std::vector<int>& labels);
std::vector<int> mask_labels(std::uint32_t mask);  // bit v-1 -> label v

} // namespace ht
