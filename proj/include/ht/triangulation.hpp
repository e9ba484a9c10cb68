#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "ht/hypertree.hpp"

namespace ht {

// Triangulation of the 2-sphere whose faces are 2-colored so that every edge
// borders one face of each color.  Faces are ascending triples; both lists
// are kept sorted.
struct BicoloredTriangulation {
    int n = 0;
    std::vector<std::vector<int>> black;
    std::vector<std::vector<int>> white;

    // Sorts faces and face lists; checks labels and face shape only (deeper
    // invariants are validate_triangulation's job).
    static BicoloredTriangulation create(int n, std::vector<std::vector<int>> black,
                                         std::vector<std::vector<int>> white);

    bool operator==(const BicoloredTriangulation& o) const {
        return n == o.n && black == o.black && white == o.white;
    }
};

// Invariant checks, reported independently:
//  - edge_bicolored: every edge of every face lies in exactly one black and
//    exactly one white face (evenness);
//  - links_single_cycles: the faces around each vertex form one alternating
//    cycle;
//  - euler: n - e + f = 2 with e = 3 |black| and f = |black| + |white|;
//  - face_count: |black| = |white| = n - 2.
// The first failing check records a witness edge (pair) or vertex.
struct TriangulationReport {
    bool edge_bicolored = false;
    bool links_single_cycles = false;
    bool euler = false;
    bool face_count = false;
    std::vector<int> witness_edge;  // pair, possibly empty
    int witness_vertex = 0;         // 0 when unused
    bool all() const { return edge_bicolored && links_single_cycles && euler && face_count; }
};

TriangulationReport validate_triangulation(const BicoloredTriangulation& t);

// The black and white face collections as hypertrees on {1..n}.  Requires a
// valid triangulation; the outputs always validate as hypertrees and are
// irreducible exactly when the triangulation is not a connected sum.
std::pair<Hypertree, Hypertree> black_white_hypertrees(const BicoloredTriangulation& t);

// For each connected component of the complement of the union of the chosen
// black faces (indices into t.black), the number of its boundary edges.
// Every returned count is divisible by 3 (each full boundary curve is);
// tests check this exhaustively over all black subsets.
std::vector<int> region_boundary_sizes(const BicoloredTriangulation& t,
                                       const std::vector<int>& black_subset);

} // namespace ht
