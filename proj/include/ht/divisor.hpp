#pragma once
#include <map>
#include <vector>

#include "ht/hypertree.hpp"
#include "ht/polymatrix.hpp"
#include "ht/triangulation.hpp"

namespace ht {

// ---------------------------------------------------------------------------
// Incidence matrices of linear forms
// ---------------------------------------------------------------------------

// For an all-triples hypertree: one row per hyperedge {i<j<k}, columns 1..n;
// row entries x_j - x_k at column i, x_k - x_i at column j, x_i - x_j at
// column k.  Rows sum to zero, and weighted by (x_1..x_n) they also sum to
// zero.  ctx must have at least n variables; column c uses variable c-1.
PolyMatrix matrix_A(const Hypertree& h, const VarContext& ctx);

// General form: a hyperedge of size k contributes k-2 rows, one per
// consecutive vertex triple of the sorted edge.  Equals matrix_A on
// all-triples input.
PolyMatrix collinearity_matrix(const Hypertree& h, const VarContext& ctx);

// Defining equation of the hypertree divisor: delete the first row of
// matrix_A together with that hyperedge's three columns, take the determinant
// of the remaining (n-3)x(n-3) minor and canonicalize.  Every admissible
// row choice yields the same result.  Requires irreducible, all triples.
Poly hypertree_equation(const Hypertree& h);

// Triangulation incidence matrix: rows indexed by the faces of the opposite
// color, columns by `color` faces (both in list order); the entry at a
// row/column pair sharing edge {i,j} is x_i - x_j oriented by the column
// face's global orientation (faces oriented consistently over the sphere).
// The two colors give matrices that are exact negated transposes, and every
// nonzero (n-3)x(n-3) minor canonicalizes to the hypertree equation.
enum class FaceColor { black, white };
PolyMatrix matrix_B(const BicoloredTriangulation& t, FaceColor color,
                    const VarContext& ctx);

// ---------------------------------------------------------------------------
// Kapranov model classes
// ---------------------------------------------------------------------------

// Divisor class d*H - sum_J m_J E_J on the moduli space of stable n-marked
// rational curves, written in the Kapranov model with respect to `marking`:
// H is the hyperplane class and E_J the exceptional classes indexed by
// subsets J of the other markings with 1 <= |J| <= n-4.  Entries may be exact
// or only lower bounds.
struct ClassEntry {
    enum class Kind { exact, lower_bound };
    Kind kind = Kind::lower_bound;
    long value = 0;
    bool operator==(const ClassEntry& o) const { return kind == o.kind && value == o.value; }
};

struct KapranovClass {
    int n = 0;        // number of markings
    int marking = 0;  // the distinguished marking
    long d = 0;       // hyperplane coefficient
    std::map<std::vector<int>, ClassEntry> m;  // key: sorted subset J
};

// Class of the hypertree divisor, pushed to the moduli space with one extra
// marking n+1 and written in the Kapranov model at that marking.  The
// hyperplane coefficient is d = (number of hyperedges) - 1.  Exact entries
// (E denotes the number of hyperedges, so E = d + 1):
//   - m_{v}           = E - valence(v),
//   - m_J             = E + |J| - 1 - sum of valences over J   for J properly
//                       inside a hyperedge (and m_{Gamma} = E + |Gamma| -
//                       sum of valences for a full hyperedge),
//   - m_{complement of Gamma} = 1,
//   - m_{complement of I} = 0 for I properly inside a hyperedge, |I| >= 3,
//   - m_J = 0 for |J| = n-3 whose complementary triple is neither a
//     hyperedge nor a wheel and whose contraction has full capacity n-4.
// Every other entry carries the lower bound
//   |J| - 1 + #(hyperedges inside complement of J) - capacity(contract(h,J)).
// Overlapping exact rules must agree; disagreement is an internal error.
KapranovClass class_coefficients(const Hypertree& h);

// ---------------------------------------------------------------------------
// Divisor comparison
// ---------------------------------------------------------------------------

enum class SameDivisorVerdict { equal_identical, equal_spherical, distinct, undecided };

// Decides whether two irreducible hypertrees on one ground set cut the same
// divisor: structurally equal ones do; a pair assembling into a bicolored
// sphere triangulation does; two generic all-triples hypertrees that do
// neither are distinct; anything else is undecided.  On all-triples input
// with n <= 8 the verdict is cross-checked against the canonical defining
// equations (internal error on contradiction).
SameDivisorVerdict same_divisor(const Hypertree& a, const Hypertree& b);

} // namespace ht
