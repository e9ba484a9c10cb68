#pragma once
#include <optional>

#include "ht/hypertree.hpp"
#include "ht/triangulation.hpp"

namespace ht {

// The bicolored octahedron: poles (1,2), antipodal equator pairs (3,4) and
// (5,6); black faces {1,3,5},{1,4,6},{2,3,6},{2,4,5}.
BicoloredTriangulation octahedron();

// Bipyramid over a 2k-cycle (k >= 3): n = 2k+2 vertices, poles 1 and 2,
// equator 3..2k+2 in cyclic order.  Faces {1,e_i,e_{i+1}} and {2,e_i,e_{i+1}}
// with colors alternating around each pole, starting with {1,3,4} black.
BicoloredTriangulation bipyramid(int k);

// Midpoint refinement: one new vertex per edge (labels n+1.. assigned in
// ascending edge order); each face {a,b,c} of color X becomes three corner
// faces of color X plus the central midpoint face of the opposite color.
// The result is valid with n' = n + e.
BicoloredTriangulation quadruple(const BicoloredTriangulation& t);

// Extension attaching a new vertex n+1: v must lie in exactly two triples T1
// and T2; T2 is replaced by (T2 minus {v}) plus {n+1} and the triple
// {a, v, n+1} is added.  `role` (an element of T2 other than v) selects which
// of the two triples is modified; by default the lexicographically larger
// one.  Requires an irreducible all-triples hypertree, valence(v) == 2 and
// a outside T1 union T2; the output is again irreducible.
Hypertree fibonacci_extend(const Hypertree& h, int v, int a,
                           std::optional<int> role = std::nullopt);

// Attempt to pair two all-triples edge collections on one ground set as the
// black and white faces of a sphere triangulation: succeeds iff every edge of
// every face of one color lies in exactly one face of the other color, all
// vertex links are single alternating cycles, and the Euler characteristic is
// 2.  Returns nothing when any condition fails.
std::optional<BicoloredTriangulation> assemble_triangulation(const Hypertree& black,
                                                             const Hypertree& white);

} // namespace ht
