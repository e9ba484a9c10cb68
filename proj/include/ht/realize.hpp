#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "ht/hypertree.hpp"

namespace ht {

// ---------------------------------------------------------------------------
// Planar realizations of hypertree divisors
// ---------------------------------------------------------------------------
// A realization places n points p_i = (x_i : y_i : 1) in the projective plane
// so that the points of every hyperedge are collinear while every triple not
// inside a hyperedge is far from collinear.  Projecting from the center
// (0 : 1 : 0) sends p_i to the marked point x_i on the line, so the x
// coordinates double as the marked configuration downstairs.
//
// Construction (deterministic for a fixed (hypertree, seed, bits) triple):
// distinct integer abscissas x_1..x_{n-1} are drawn from the seed; the last
// abscissa is solved for exactly as a real root of the divisor's defining
// minor, specialized at the drawn integers and isolated by Sturm bisection to
// `bits` of precision (roots beyond the drawn values are preferred); the y
// coordinates span the extra kernel vector of the collinearity matrix,
// orthogonalized against the all-ones and coordinate vectors and normalized.
// Attempts that fail verification are retried with fresh abscissas, up to
// max_retries in total.

struct RealizationOptions {
    std::uint64_t seed = 1;
    int bits = 256;          // working precision in bits (64..4096)
    int max_retries = 20;    // total attempts before giving up (1..100)
    double tol_collinear = 1e-9;
    double tol_generic = 1e-6;
    double tol_residual = 1e-8;
};

// Coordinates as decimal strings ("-17", "0.3941...e2"): exact integers for
// the drawn abscissas, `bits`-precision decimals for the solved abscissa and
// the y coordinates.  Re-parsing the strings at the stored precision
// reproduces the verified configuration.
struct Realization {
    int n = 0;
    std::uint64_t seed = 0;
    int bits = 0;
    int attempts = 0;               // attempts consumed, >= 1
    std::vector<std::string> x;     // n entries; x[n-1] is the solved one
    std::vector<std::string> y;     // n entries
};

// Scale-invariant quality report: each point triple is scored by the
// determinant of its three rows (x_i, y_i, 1), every row scaled to unit
// length.  Triples inside a hyperedge must score below tol_collinear
// (worst_collinear is the largest such score); all other triples must score
// above tol_generic (worst_generic is the smallest).  For all-triples
// hypertrees the defining polynomial is also evaluated at the x coordinates;
// equation_residual is |value| divided by the sum of |term| magnitudes
// (-1 when not applicable, residual_ok then holds vacuously).
struct RealizationCheck {
    bool collinear_ok = false;
    bool generic_ok = false;
    bool residual_ok = false;
    double worst_collinear = 0.0;
    double worst_generic = 0.0;
    double equation_residual = -1.0;
    std::vector<int> collinear_witness;  // triple attaining worst_collinear
    std::vector<int> generic_witness;    // triple attaining worst_generic
    bool ok() const { return collinear_ok && generic_ok && residual_ok; }
};

// Builds a verified realization.  Requires a valid irreducible hypertree
// (precondition error otherwise); rejects out-of-range options (input error);
// throws a budget error when max_retries attempts all fail verification.
Realization realize(const Hypertree& h, const RealizationOptions& opt = {});

// Re-checks a realization from its decimal strings at the stored precision.
// Shape mismatches and unparsable coordinates are input errors.
RealizationCheck verify_realization(const Hypertree& h, const Realization& r,
                                    double tol_collinear = 1e-9,
                                    double tol_generic = 1e-6,
                                    double tol_residual = 1e-8);

} // namespace ht
