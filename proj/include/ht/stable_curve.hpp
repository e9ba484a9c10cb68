#pragma once
#include <utility>
#include <vector>

#include "ht/hypertree.hpp"

namespace ht {

// Dual graph of the nodal curve attached to a hypertree: one "black"
// component per hyperedge, one "white" component per vertex of valence > 2,
// and one node per incidence.  A vertex of valence exactly 2 becomes a single
// node joining its two black components directly.  `dualizing_degree` stores
// the degree of the dualizing sheaf on the component: |e|-2 on black
// components, valence-2 on white ones.
struct StableCurveGraph {
    struct Component {
        bool black = false;
        int label = 0;  // hyperedge index for black, vertex label for white
        int dualizing_degree = 0;
    };
    std::vector<Component> components;
    std::vector<std::pair<int, int>> nodes;  // component index pairs
    int black_count = 0;

    int white_count() const { return static_cast<int>(components.size()) - black_count; }
    bool connected() const;
};

// Build the dual graph.  Requires every vertex to lie in at least 2
// hyperedges.
StableCurveGraph stable_model(const Hypertree& h);

// Multidegree assigning 1 to every black component and 0 to every white one.
std::vector<int> canonical_multidegree(const StableCurveGraph& g);

// Numerical stability of a multidegree b on the curve: for every proper
// nonempty subcurve Y,
//     |(2d-4) * b(Y) - d * m(Y)| < (d-2) * #(Y cap complement),
// where d is the number of black components, m(Y) sums dualizing degrees and
// #() counts connecting nodes.  Exhaustive over all subcurves.  Requires
// d >= 3 (the inequality is vacuous or degenerate otherwise).
bool gieseker_stable(const StableCurveGraph& g, const std::vector<int>& multidegree);

} // namespace ht
