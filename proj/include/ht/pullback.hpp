#pragma once
#include <cstdint>
#include <vector>

#include "ht/divisor.hpp"
#include "ht/poly.hpp"

namespace ht {

// ---------------------------------------------------------------------------
// Diagonal multiplicity tables
// ---------------------------------------------------------------------------

// Vanishing orders of one fixed nonzero polynomial along every coordinate
// diagonal: the entry at I, for I a subset of {1..n} with |I| >= 2, is the
// multiplicity along the subspace where the variables indexed by I coincide.
struct DiagonalMultiplicityTable {
    int n = 0;  // variable count (= marking count of the ambient configuration)
    // Indexed by subset bitmask (bit v = variable v+1); -1 outside the
    // domain, i.e. at masks with fewer than two bits.
    std::vector<int> entries;

    // Entry lookup; input_error on masks outside the domain.
    int at(std::uint32_t mask) const;
};

// Computes the full table over F's context (every subset with |I| >= 2,
// 2^n - n - 1 entries).  F must be nonzero.  Translation-invariant input --
// the case for every divisor polynomial in this library -- is handled by a
// direct per-term scan; other input falls back to literal diagonal
// substitution, which needs context room for the helper variables and may
// raise budget_error when n is large.
DiagonalMultiplicityTable multiplicity_table(const Poly& F);

// Appends one fresh variable that the polynomial does not involve, producing
// the table of the same polynomial read on n+1 coordinates.  This is how the
// class of a pullback along the forgetful map (dropping the new marking) is
// written down: a subset containing the new variable inherits the entry of
// the subset with it removed, or 0 when fewer than two old variables remain
// (the polynomial does not vanish along those diagonals at all).
DiagonalMultiplicityTable extend_with_dummy(const DiagonalMultiplicityTable& t);

// ---------------------------------------------------------------------------
// Conversion to a divisor class
// ---------------------------------------------------------------------------

// Reads the divisor class off a multiplicity table, in the Kapranov model of
// the moduli space of stable n-marked rational curves at marking p (1-based).
//
// On the configuration-space compactification (the iterated blow-up of affine
// n-space along its diagonals), the class of the strict transform of {F = 0}
// is -sum_I n_I D_I.  A pair diagonal is already a hyperplane, so its divisor
// satisfies the relation sum over all I containing {i,j} of D_I = 0 (the
// principal divisor of x_i - x_j); eliminating the pair classes leaves the
// reduced coefficients
//     eff(I) = n_I - sum of n_q over pairs q inside I          (|I| >= 3).
// The class d*H - sum m_J E_J is then determined by the subsets avoiding p:
//     d   = eff({1..n} minus {p}),
//     m_J = eff(({1..n} minus {p}) minus J)    for 1 <= |J| <= n-4.
// All produced entries are exact.
//
// The coefficients at subsets containing p are determined by d and m as well.
// With strict = true (default) they are verified:
//     eff(J) = d*(|J| - 2) + m(J minus {p}) - sum of m({k}) over k in J\{p}
// for every J containing p with |J| >= 3, where m at an index outside the
// range 1 <= |.| <= n-4 reads as zero.  A mismatch means the table is not the
// table of a divisor pulled back from the moduli space (for example, a
// polynomial whose zero locus contains no configuration of distinct points)
// and raises precondition_error naming the offending subset.
//
// Requires n >= 4 and a complete table; multiplying F by any product of
// coordinate differences does not change the result (such factors lie
// entirely over the boundary).
KapranovClass fm_to_kapranov(const DiagonalMultiplicityTable& t, int p,
                             bool strict = true);

// ---------------------------------------------------------------------------
// The three fixed divisor polynomials
// ---------------------------------------------------------------------------
// Exact integer coefficients throughout.  Variables are markings.  The first
// two live on seven markings: three glued coordinate pairs (x1,x2), (x3,x4),
// (x5,x6) -- each pair is one node of a three-nodal rational curve -- and the
// moving point x7.  The third lives on ten markings with glued pairs
// (x1,x6), (x2,x7), ..., (x5,x10).

// Wronskian criterion for the moving point to be a Weierstrass point of the
// three-nodal curve: determinant of the 3x3 matrix with rows (g, g', g'')
// and columns i = 1..3, where g_i is the product of (x7 - a)(x7 - b) over
// the two glued pairs (a, b) other than pair i, and ' is d/dx7.
Poly weierstrass_polynomial();

// Discriminant criterion for the tangent line at the moving point to be
// tangent elsewhere: with a helper variable s, the determinant of the rows
// (g(x7), g(s), g'(x7)) is divisible by (s - x7)^2 exactly; the quotient is
// a quadratic As^2 + Bs + C in s, and the returned polynomial is
// B^2 - 4AC, which involves only the seven marking variables.  Inexact
// division or a higher s-degree raises internal_error.
Poly bitangent_polynomial();

// Criterion for the five chords of a rational normal cubic determined by the
// glued pairs to admit a common transversal line: the determinant of the
// 5x5 symmetric matrix with zero diagonal whose (i,j) entry is the 4x4
// Vandermonde determinant in (x_i, x_{i+5}, x_j, x_{j+5}) divided exactly by
// (x_{i+5} - x_i)(x_{j+5} - x_j).  Degree 20 in ten variables.  Inexact
// division raises internal_error.
Poly transversal_polynomial();

} // namespace ht
