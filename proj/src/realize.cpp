#include "ht/realize.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "ht/divisor.hpp"
#include "ht/errors.hpp"
#include "ht/util.hpp"

namespace ht {

namespace {

// ---------------------------------------------------------------------------
// Minimal RAII wrapper around mpfr_t
// ---------------------------------------------------------------------------

class Real {
public:
    explicit Real(mpfr_prec_t p) {
        mpfr_init2(v_, p);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

private:
    mpfr_t v_;
};

Real make_real(mpfr_prec_t p, long value) {
    Real r(p);
    mpfr_set_si(r.get(), value, MPFR_RNDN);
    return r;
}

Real make_real(mpfr_prec_t p, const mpq_class& value) {
    Real r(p);
    mpfr_set_q(r.get(), value.get_mpq_t(), MPFR_RNDN);
    return r;
}

Real operator+(const Real& a, const Real& b) {
    Real r(a.prec());
    mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
Real operator-(const Real& a, const Real& b) {
    Real r(a.prec());
    mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
Real operator*(const Real& a, const Real& b) {
    Real r(a.prec());
    mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
Real operator/(const Real& a, const Real& b) {
    Real r(a.prec());
    mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
Real rabs(const Real& a) {
    Real r(a.prec());
    mpfr_abs(r.get(), a.get(), MPFR_RNDN);
    return r;
}
Real rsqrt(const Real& a) {
    Real r(a.prec());
    mpfr_sqrt(r.get(), a.get(), MPFR_RNDN);
    return r;
}
bool abs_less(const Real& a, const Real& b) { return mpfr_cmpabs(a.get(), b.get()) < 0; }

// Decimal string in normalized scientific form ("-0.dddd...e<exp>") that
// mpfr_set_str parses back; exact "0" for zero.
std::string to_decimal(const Real& a, int digits) {
    if (mpfr_zero_p(a.get())) return "0";
    if (!mpfr_number_p(a.get())) throw internal_error("non-finite coordinate value");
    mpfr_exp_t e = 0;
    char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), a.get(), MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    const bool neg = !mant.empty() && mant[0] == '-';
    std::string d = neg ? mant.substr(1) : mant;
    return (neg ? std::string("-0.") : std::string("0.")) + d + "e" + std::to_string(static_cast<long>(e));
}

Real parse_real(const std::string& text, mpfr_prec_t p) {
    Real r(p);
    if (mpfr_set_str(r.get(), text.c_str(), 10, MPFR_RNDN) != 0 || !mpfr_number_p(r.get()))
        throw input_error("unparsable coordinate string: " + text);
    return r;
}

// ---------------------------------------------------------------------------
// Exact integer determinant (Bareiss)
// ---------------------------------------------------------------------------

mpz_class integer_determinant(std::vector<std::vector<mpz_class>> a) {
    const int m = static_cast<int>(a.size());
    if (m == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < m; ++k) {
        int piv = -1;
        for (int r = k; r < m && piv < 0; ++r)
            if (a[r][k] != 0) piv = r;
        if (piv < 0) return 0;
        if (piv != k) {
            std::swap(a[piv], a[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < m; ++i) {
            for (int j = k + 1; j < m; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[m - 1][m - 1] : mpz_class(-a[m - 1][m - 1]);
}

// ---------------------------------------------------------------------------
// Univariate polynomials over the rationals (ascending coefficients)
// ---------------------------------------------------------------------------

using QPoly = std::vector<mpq_class>;

void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}
int qdeg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

mpq_class qeval(const QPoly& p, const mpq_class& t) {
    mpq_class acc = 0;
    for (int i = qdeg(p); i >= 0; --i) acc = acc * t + p[i];
    return acc;
}

QPoly qderivative(const QPoly& p) {
    QPoly d;
    for (int i = 1; i <= qdeg(p); ++i) d.push_back(p[i] * i);
    qtrim(d);
    return d;
}

// Remainder of a modulo b (b nonzero).
QPoly qremainder(QPoly a, const QPoly& b) {
    qtrim(a);
    const int db = qdeg(b);
    while (qdeg(a) >= db) {
        mpq_class f = a.back() / b.back();
        const int shift = qdeg(a) - db;
        for (int i = 0; i <= db; ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        qtrim(a);
    }
    return a;
}

// Exact quotient (remainder known to vanish).
QPoly qquotient(QPoly a, const QPoly& b) {
    qtrim(a);
    const int db = qdeg(b);
    QPoly q(std::max(0, qdeg(a) - db + 1), mpq_class(0));
    while (qdeg(a) >= db) {
        mpq_class f = a.back() / b.back();
        const int shift = qdeg(a) - db;
        q[shift] = f;
        for (int i = 0; i <= db; ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        qtrim(a);
    }
    if (!a.empty()) throw internal_error("inexact polynomial quotient");
    qtrim(q);
    return q;
}

QPoly qgcd(QPoly a, QPoly b) {
    qtrim(a);
    qtrim(b);
    while (!b.empty()) {
        QPoly r = qremainder(a, b);
        a.swap(b);
        b.swap(r);
    }
    if (!a.empty()) {
        mpq_class lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

QPoly squarefree_part(const QPoly& p) {
    QPoly g = qgcd(p, qderivative(p));
    if (qdeg(g) <= 0) return p;
    return qquotient(p, g);
}

// Divide out (t - r); caller guarantees p(r) == 0.
QPoly deflate(const QPoly& p, const mpq_class& r) {
    QPoly b{mpq_class(-r), mpq_class(1)};
    return qquotient(p, b);
}

std::vector<QPoly> sturm_chain(const QPoly& p) {
    std::vector<QPoly> s;
    s.push_back(p);
    QPoly d = qderivative(p);
    if (!d.empty()) s.push_back(d);
    while (s.size() >= 2 && qdeg(s.back()) > 0) {
        QPoly r = qremainder(s[s.size() - 2], s.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        s.push_back(std::move(r));
    }
    return s;
}

int sign_variations(const std::vector<QPoly>& chain, const mpq_class& x) {
    int count = 0, last = 0;
    for (const auto& p : chain) {
        const int s = sgn(qeval(p, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

// One isolated real root: either an exact rational point or an open interval
// carrying a sign change of a squarefree polynomial.
struct RootCandidate {
    bool exact = false;
    mpq_class lo, hi;  // exact: lo == hi == the root
    mpq_class midpoint() const { return (lo + hi) / 2; }
};

// All real roots of a squarefree nonconstant polynomial, ascending.  The
// extra split point must satisfy p(split) != 0; it guarantees every interval
// lies entirely on one side of it.
std::vector<RootCandidate> isolate_roots(QPoly p, const mpq_class& split) {
    std::vector<RootCandidate> exact_roots;
restart:
    qtrim(p);
    if (qdeg(p) < 1) {
        std::sort(exact_roots.begin(), exact_roots.end(),
                  [](const RootCandidate& a, const RootCandidate& b) { return a.lo < b.lo; });
        return exact_roots;
    }
    mpq_class bound = 1;
    for (int i = 0; i < qdeg(p); ++i) {
        mpq_class q = abs(p[i] / p.back());
        if (q > bound) bound = q;
    }
    bound += 1;  // all roots lie strictly inside (-bound, bound)
    const std::vector<QPoly> chain = sturm_chain(p);
    std::vector<std::pair<mpq_class, mpq_class>> stack;
    if (-bound < split && split < bound && qeval(p, split) != 0) {
        stack.emplace_back(-bound, split);
        stack.emplace_back(split, bound);
    } else {
        stack.emplace_back(-bound, bound);
    }
    std::vector<RootCandidate> intervals;
    long steps = 0;
    while (!stack.empty()) {
        if (++steps > 100000) throw internal_error("root isolation failed to converge");
        auto [a, b] = stack.back();
        stack.pop_back();
        const int roots = sign_variations(chain, a) - sign_variations(chain, b);
        if (roots <= 0) continue;
        const int sa = sgn(qeval(p, a)), sb = sgn(qeval(p, b));
        if (roots == 1 && sa * sb < 0) {
            RootCandidate c;
            c.lo = a;
            c.hi = b;
            intervals.push_back(std::move(c));
            continue;
        }
        mpq_class m = (a + b) / 2;
        if (qeval(p, m) == 0) {
            RootCandidate c;
            c.exact = true;
            c.lo = c.hi = m;
            exact_roots.push_back(std::move(c));
            p = deflate(p, m);
            p = squarefree_part(p);
            goto restart;  // fresh chain for the deflated polynomial
        }
        stack.emplace_back(a, m);
        stack.emplace_back(m, b);
    }
    intervals.insert(intervals.end(), exact_roots.begin(), exact_roots.end());
    std::sort(intervals.begin(), intervals.end(),
              [](const RootCandidate& a, const RootCandidate& b) {
                  return a.midpoint() < b.midpoint();
              });
    return intervals;
}

// Shrink a sign-change interval until its width drops below 2^-(bits+16)
// relative to its magnitude.
mpq_class refine_root(const QPoly& p, RootCandidate c, int bits) {
    if (c.exact) return c.lo;
    mpz_class denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), 2, static_cast<unsigned long>(bits + 16));
    mpq_class scale = std::max(mpq_class(abs(c.lo)), mpq_class(1));
    mpq_class eps = scale / mpq_class(denom);
    int slo = sgn(qeval(p, c.lo));
    while (c.hi - c.lo > eps) {
        mpq_class m = (c.lo + c.hi) / 2;
        const int sm = sgn(qeval(p, m));
        if (sm == 0) return m;
        if (sm == slo) c.lo = m;
        else c.hi = m;
    }
    return (c.lo + c.hi) / 2;
}

// ---------------------------------------------------------------------------
// Collinearity rows (consecutive triples of every hyperedge)
// ---------------------------------------------------------------------------

struct TripleRow {
    int i, j, k;  // 1-based labels
    int edge;     // owning hyperedge index
};

std::vector<TripleRow> triple_rows(const Hypertree& h) {
    std::vector<TripleRow> rows;
    for (int e = 0; e < h.edge_count(); ++e) {
        const auto& edge = h.edge(e);
        for (std::size_t t = 0; t + 2 < edge.size(); ++t)
            rows.push_back({edge[t], edge[t + 1], edge[t + 2], e});
    }
    return rows;
}

void validate_options(const RealizationOptions& opt) {
    if (opt.bits < 64 || opt.bits > 4096)
        throw input_error("precision must be between 64 and 4096 bits");
    if (opt.max_retries < 1 || opt.max_retries > 100)
        throw input_error("retry budget must be between 1 and 100");
    if (!(opt.tol_collinear > 0) || !(opt.tol_generic > 0) || !(opt.tol_residual > 0))
        throw input_error("tolerances must be positive");
}

} // namespace

// ---------------------------------------------------------------------------
// realize
// ---------------------------------------------------------------------------

Realization realize(const Hypertree& h, const RealizationOptions& opt) {
    validate_options(opt);
    if (!validate(h).all())
        throw precondition_error("realization requires a valid irreducible hypertree");
    const int n = h.n();

    // Hyperedge whose rows and columns are deleted from the collinearity
    // matrix; it must avoid the solved vertex n.  One always exists: if every
    // hyperedge contained n, the remaining labels would each lie in exactly
    // one hyperedge.
    int dropped = -1;
    for (int e = 0; e < h.edge_count() && dropped < 0; ++e)
        if (!(h.edge_mask(e) & (1u << (n - 1)))) dropped = e;
    if (dropped < 0) throw internal_error("no hyperedge avoids the solved vertex");

    const std::vector<TripleRow> rows = triple_rows(h);
    std::vector<int> kept_rows, kept_cols;  // kept_cols: 1-based labels
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (rows[r].edge != dropped) kept_rows.push_back(static_cast<int>(r));
    const std::uint32_t dropped_mask = h.edge_mask(dropped);
    for (int v = 1; v <= n; ++v)
        if (!(dropped_mask & (1u << (v - 1)))) kept_cols.push_back(v);
    const int m = static_cast<int>(kept_rows.size());
    if (m != static_cast<int>(kept_cols.size()))
        throw internal_error("deleted-edge minor is not square");

    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(opt.bits + 64);
    const int digits = static_cast<int>(opt.bits * 0.30103) + 4;
    SplitMix64 rng(opt.seed);

    for (int attempt = 1; attempt <= opt.max_retries; ++attempt) {
        // Distinct integer abscissas for vertices 1..n-1.
        std::vector<long> xs(n, 0);
        {
            std::set<long> used;
            for (int i = 0; i + 1 < n; ++i) {
                long v;
                do {
                    v = static_cast<long>(rng.below(static_cast<std::uint64_t>(6 * n))) + 1;
                } while (used.count(v));
                used.insert(v);
                xs[i] = v;
            }
        }
        long max_x = *std::max_element(xs.begin(), xs.end() - 1);

        // The minor determinant as a univariate polynomial in the last
        // abscissa: exact integer evaluations at m+1 sample points, then
        // Lagrange interpolation.
        auto minor_at = [&](long t) {
            std::vector<std::vector<mpz_class>> a(
                m, std::vector<mpz_class>(m, mpz_class(0)));
            auto coord = [&](int v) -> long { return v == n ? t : xs[v - 1]; };
            for (int r = 0; r < m; ++r) {
                const TripleRow& row = rows[kept_rows[r]];
                for (int c = 0; c < m; ++c) {
                    const int v = kept_cols[c];
                    if (v == row.i) a[r][c] = coord(row.j) - coord(row.k);
                    else if (v == row.j) a[r][c] = coord(row.k) - coord(row.i);
                    else if (v == row.k) a[r][c] = coord(row.i) - coord(row.j);
                }
            }
            return integer_determinant(std::move(a));
        };
        std::vector<mpz_class> samples;
        for (int s = 0; s <= m; ++s) samples.push_back(minor_at(s));
        QPoly poly(m + 1, mpq_class(0));
        for (int s = 0; s <= m; ++s) {
            // Lagrange basis polynomial for node s, times the sample value.
            QPoly basis{mpq_class(1)};
            mpq_class denom = 1;
            for (int r = 0; r <= m; ++r) {
                if (r == s) continue;
                QPoly next(basis.size() + 1, mpq_class(0));
                for (std::size_t i = 0; i < basis.size(); ++i) {
                    next[i + 1] += basis[i];
                    next[i] -= basis[i] * r;
                }
                basis = std::move(next);
                denom *= mpq_class(s - r);
            }
            const mpq_class weight = mpq_class(samples[s]) / denom;
            for (std::size_t i = 0; i < basis.size(); ++i) poly[i] += basis[i] * weight;
        }
        qtrim(poly);
        if (qeval(poly, mpq_class(m + 1)) != mpq_class(minor_at(m + 1)))
            throw internal_error("minor interpolation failed its extra-point check");
        if (qdeg(poly) < 1) continue;  // degenerate specialization

        // Existing abscissas are never acceptable roots: divide them out.
        for (int i = 0; i + 1 < n; ++i)
            while (qdeg(poly) >= 1 && qeval(poly, mpq_class(xs[i])) == 0)
                poly = deflate(poly, mpq_class(xs[i]));
        poly = squarefree_part(poly);
        if (qdeg(poly) < 1) continue;

        std::vector<RootCandidate> roots = isolate_roots(poly, mpq_class(max_x));
        if (roots.empty()) continue;
        const RootCandidate* chosen = nullptr;
        for (const auto& c : roots)
            if (c.lo >= max_x) {  // entirely right of every drawn abscissa
                chosen = &c;
                break;
            }
        if (!chosen) chosen = &roots.front();
        const mpq_class root = refine_root(poly, *chosen, opt.bits);

        // Numeric phase: extra kernel vector of the full collinearity matrix.
        std::vector<Real> X;
        X.reserve(n);
        for (int i = 0; i + 1 < n; ++i) X.push_back(make_real(prec, xs[i]));
        X.push_back(make_real(prec, root));

        const int rows_total = static_cast<int>(rows.size());  // n - 2
        // Kernel vectors with the first two coordinates pinned to zero form a
        // square homogeneous system in the remaining n - 2 coordinates.
        std::vector<std::vector<Real>> w(rows_total, std::vector<Real>(rows_total, Real(prec)));
        for (int r = 0; r < rows_total; ++r) {
            const TripleRow& row = rows[r];
            auto put = [&](int v, const Real& val) {
                if (v >= 3) w[r][v - 3] = val;
            };
            put(row.i, X[row.j - 1] - X[row.k - 1]);
            put(row.j, X[row.k - 1] - X[row.i - 1]);
            put(row.k, X[row.i - 1] - X[row.j - 1]);
        }
        std::vector<int> colp(rows_total);
        for (int i = 0; i < rows_total; ++i) colp[i] = i;
        bool singular_early = false;
        for (int k = 0; k < rows_total; ++k) {
            int pr = k, pc = k;
            for (int i = k; i < rows_total; ++i)
                for (int j = k; j < rows_total; ++j)
                    if (abs_less(w[pr][pc], w[i][j])) pr = i, pc = j;
            if (pr != k) std::swap(w[pr], w[k]);
            if (pc != k) {
                for (auto& rrow : w) std::swap(rrow[pc], rrow[k]);
                std::swap(colp[pc], colp[k]);
            }
            if (k + 1 < rows_total && mpfr_zero_p(w[k][k].get())) {
                singular_early = true;  // rank deficiency above 1
                break;
            }
            if (k + 1 == rows_total) break;
            for (int i = k + 1; i < rows_total; ++i) {
                Real f = w[i][k] / w[k][k];
                for (int j = k; j < rows_total; ++j) w[i][j] = w[i][j] - f * w[k][j];
            }
        }
        if (singular_early) continue;
        std::vector<Real> zp(rows_total, Real(prec));
        zp[rows_total - 1] = make_real(prec, 1);
        for (int k = rows_total - 2; k >= 0; --k) {
            Real acc(prec);
            for (int j = k + 1; j < rows_total; ++j) acc = acc + w[k][j] * zp[j];
            zp[k] = (make_real(prec, 0) - acc) / w[k][k];
        }
        std::vector<Real> y(n, Real(prec));
        for (int j = 0; j < rows_total; ++j) y[colp[j] + 2] = zp[j];

        // Subtract the projections onto the known kernel vectors (all-ones
        // and the abscissas), then normalize deterministically.
        auto dot = [&](const std::vector<Real>& a, const std::vector<Real>& b) {
            Real acc(prec);
            for (int i = 0; i < n; ++i) acc = acc + a[i] * b[i];
            return acc;
        };
        std::vector<Real> e1(n, Real(prec));
        {
            Real inv = make_real(prec, 1) / rsqrt(make_real(prec, n));
            for (auto& c : e1) c = inv;
        }
        std::vector<Real> e2 = X;
        {
            Real proj = dot(e2, e1);
            for (int i = 0; i < n; ++i) e2[i] = e2[i] - proj * e1[i];
            Real norm = rsqrt(dot(e2, e2));
            for (auto& c : e2) c = c / norm;
        }
        {
            Real p1 = dot(y, e1), p2 = dot(y, e2);
            for (int i = 0; i < n; ++i) y[i] = y[i] - p1 * e1[i] - p2 * e2[i];
            Real norm = rsqrt(dot(y, y));
            if (mpfr_zero_p(norm.get())) continue;  // y collapsed into the span
            for (auto& c : y) c = c / norm;
        }
        int lead = 0;
        for (int i = 1; i < n; ++i)
            if (abs_less(y[lead], y[i])) lead = i;
        if (mpfr_sgn(y[lead].get()) < 0)
            for (auto& c : y) c = make_real(prec, 0) - c;

        Realization out;
        out.n = n;
        out.seed = opt.seed;
        out.bits = opt.bits;
        out.attempts = attempt;
        for (int i = 0; i + 1 < n; ++i) out.x.push_back(std::to_string(xs[i]));
        out.x.push_back(to_decimal(X[n - 1], digits));
        for (int i = 0; i < n; ++i) out.y.push_back(to_decimal(y[i], digits));

        RealizationCheck check = verify_realization(h, out, opt.tol_collinear,
                                                    opt.tol_generic, opt.tol_residual);
        if (check.ok()) return out;
    }
    throw budget_error("no verified realization within the retry budget");
}

// ---------------------------------------------------------------------------
// verify_realization
// ---------------------------------------------------------------------------

RealizationCheck verify_realization(const Hypertree& h, const Realization& r,
                                    double tol_collinear, double tol_generic,
                                    double tol_residual) {
    const int n = h.n();
    if (r.n != n || static_cast<int>(r.x.size()) != n || static_cast<int>(r.y.size()) != n)
        throw input_error("realization shape does not match the hypertree");
    if (r.bits < 64 || r.bits > 4096)
        throw input_error("unsupported precision in realization");
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(r.bits + 64);
    std::vector<Real> X, Y;
    for (int i = 0; i < n; ++i) {
        X.push_back(parse_real(r.x[i], prec));
        Y.push_back(parse_real(r.y[i], prec));
    }

    // Unit-normalized triple determinants.
    std::vector<Real> norm;
    norm.reserve(n);
    for (int i = 0; i < n; ++i)
        norm.push_back(rsqrt(X[i] * X[i] + Y[i] * Y[i] + make_real(prec, 1)));

    RealizationCheck out;
    out.worst_collinear = 0.0;
    out.worst_generic = -1.0;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                Real det = (X[j - 1] - X[i - 1]) * (Y[k - 1] - Y[i - 1]) -
                           (X[k - 1] - X[i - 1]) * (Y[j - 1] - Y[i - 1]);
                det = rabs(det / (norm[i - 1] * norm[j - 1] * norm[k - 1]));
                const double margin = mpfr_get_d(det.get(), MPFR_RNDN);
                const std::uint32_t tmask =
                    (1u << (i - 1)) | (1u << (j - 1)) | (1u << (k - 1));
                bool in_edge = false;
                for (int e = 0; e < h.edge_count() && !in_edge; ++e)
                    if ((h.edge_mask(e) & tmask) == tmask) in_edge = true;
                if (in_edge) {
                    if (margin > out.worst_collinear) {
                        out.worst_collinear = margin;
                        out.collinear_witness = {i, j, k};
                    }
                } else if (out.worst_generic < 0 || margin < out.worst_generic) {
                    out.worst_generic = margin;
                    out.generic_witness = {i, j, k};
                }
            }
    if (out.worst_generic < 0) out.worst_generic = 0.0;  // no free triples exist
    out.collinear_ok = out.worst_collinear < tol_collinear;
    out.generic_ok = out.generic_witness.empty() || out.worst_generic > tol_generic;

    // Defining-equation residual (all-triples hypertrees only): the value at
    // the abscissas, scaled by the total magnitude of the evaluated terms.
    out.equation_residual = -1.0;
    out.residual_ok = true;
    if (h.all_triples()) {
        const Poly eq = hypertree_equation(h);
        Real value(prec), scale(prec);
        for (const auto& [mono, coeff] : eq.terms()) {
            Real term(prec);
            mpfr_set_z(term.get(), coeff.get_mpz_t(), MPFR_RNDN);
            for (int v = 0; v < n; ++v) {
                const int e = mono.exponent(v);
                for (int p = 0; p < e; ++p) term = term * X[v];
            }
            value = value + term;
            scale = scale + rabs(term);
        }
        if (mpfr_zero_p(scale.get()))
            throw internal_error("defining equation evaluated to an empty sum");
        const Real ratio = rabs(value / scale);
        out.equation_residual = mpfr_get_d(ratio.get(), MPFR_RNDN);
        out.residual_ok = out.equation_residual < tol_residual;
    }
    return out;
}

} // namespace ht
