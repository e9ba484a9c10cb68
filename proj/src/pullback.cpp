#include "ht/pullback.hpp"

#include <bit>
#include <climits>
#include <sstream>

#include "ht/errors.hpp"
#include "ht/polymatrix.hpp"

namespace ht {
namespace {

int popcount(std::uint32_t m) { return std::popcount(m); }

std::string subset_labels(std::uint32_t mask) {
    std::ostringstream out;
    bool first = true;
    for (int v = 0; v < 32; ++v)
        if (mask & (1u << v)) {
            if (!first) out << ",";
            out << (v + 1);
            first = false;
        }
    return out.str();
}

} // namespace

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

int DiagonalMultiplicityTable::at(std::uint32_t mask) const {
    if (n < 2 || entries.size() != (std::size_t{1} << n))
        throw input_error("malformed multiplicity table");
    if (mask >= entries.size() || popcount(mask) < 2)
        throw input_error("multiplicity lookup outside the table domain");
    return entries[mask];
}

DiagonalMultiplicityTable multiplicity_table(const Poly& F) {
    if (F.is_zero())
        throw precondition_error("multiplicity table of the zero polynomial");
    const int n = F.context().size();
    if (n < 2) throw input_error("multiplicity table needs at least two variables");

    DiagonalMultiplicityTable t;
    t.n = n;
    t.entries.assign(std::size_t{1} << n, -1);

    if (F.is_translation_invariant()) {
        // Substituting x_v -> y + u_v over I and then translating every
        // variable by -y renames monomials bijectively (x_v -> u_v on I,
        // x_w -> x_w - y off I), so distinct terms cannot cancel and the
        // vanishing order is the minimal I-degree over the stored terms.
        const auto& terms = F.terms();
        const std::size_t tc = terms.size();
        std::vector<std::uint8_t> exps(tc * static_cast<std::size_t>(n));
        for (std::size_t ti = 0; ti < tc; ++ti)
            for (int v = 0; v < n; ++v)
                exps[ti * n + v] =
                    static_cast<std::uint8_t>(terms[ti].first.exponent(v));
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            if (popcount(mask) < 2) continue;
            int best = INT_MAX;
            for (std::size_t ti = 0; ti < tc && best > 0; ++ti) {
                int d = 0;
                const std::uint8_t* e = &exps[ti * n];
                for (std::uint32_t m = mask; m; m &= m - 1)
                    d += e[std::countr_zero(m)];
                if (d < best) best = d;
            }
            t.entries[mask] = best;
        }
        return t;
    }

    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (popcount(mask) < 2) continue;
        std::vector<int> vars;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) vars.push_back(v);
        t.entries[mask] = F.diagonal_multiplicity(vars);
    }
    return t;
}

DiagonalMultiplicityTable extend_with_dummy(const DiagonalMultiplicityTable& t) {
    if (t.n < 2 || t.entries.size() != (std::size_t{1} << t.n))
        throw input_error("malformed multiplicity table");
    if (t.n + 1 > 30) throw budget_error("multiplicity table too wide to extend");
    DiagonalMultiplicityTable out;
    out.n = t.n + 1;
    out.entries.assign(std::size_t{1} << out.n, -1);
    const std::uint32_t newbit = 1u << t.n;
    for (std::uint32_t mask = 0; mask < (1u << out.n); ++mask) {
        if (popcount(mask) < 2) continue;
        const std::uint32_t low = mask & (newbit - 1);
        if (mask & newbit)
            out.entries[mask] = popcount(low) >= 2 ? t.entries[low] : 0;
        else
            out.entries[mask] = t.entries[low];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Conversion
// ---------------------------------------------------------------------------

KapranovClass fm_to_kapranov(const DiagonalMultiplicityTable& t, int p,
                             bool strict) {
    const int n = t.n;
    if (n < 4) throw input_error("class conversion needs at least four markings");
    if (n > 30) throw input_error("class conversion supports at most 30 markings");
    if (p < 1 || p > n) throw input_error("marking out of range");
    if (t.entries.size() != (std::size_t{1} << n))
        throw input_error("malformed multiplicity table");
    const std::uint32_t full = (n == 30) ? 0x3fffffffu : ((1u << n) - 1);
    for (std::uint32_t mask = 0; mask <= full; ++mask)
        if (popcount(mask) >= 2 && t.entries[mask] < 0)
            throw input_error("incomplete multiplicity table at subset {" +
                              subset_labels(mask) + "}");

    // Reduced coefficients with every pair-diagonal class eliminated through
    // the relation  sum over I containing {i,j} of D_I = 0.
    std::vector<long> eff(std::size_t{1} << n, 0);
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
        if (popcount(mask) < 3) continue;
        long e = t.entries[mask];
        for (std::uint32_t a = mask; a; a &= a - 1) {
            const std::uint32_t abit = a & ~(a - 1);
            for (std::uint32_t b = mask & (abit - 1); b; b &= b - 1) {
                const std::uint32_t bbit = b & ~(b - 1);
                e -= t.entries[abit | bbit];
            }
        }
        eff[mask] = e;
    }

    const std::uint32_t pbit = 1u << (p - 1);
    const std::uint32_t rest = full & ~pbit;

    KapranovClass out;
    out.n = n;
    out.marking = p;
    out.d = eff[rest];
    for (std::uint32_t j = 0; j <= full; ++j) {
        if (j & ~rest) continue;
        const int size = popcount(j);
        if (size < 1 || size > n - 4) continue;
        std::vector<int> key;
        for (int v = 0; v < n; ++v)
            if (j & (1u << v)) key.push_back(v + 1);
        out.m[key] = ClassEntry{ClassEntry::Kind::exact, eff[rest & ~j]};
    }

    if (strict) {
        // m at an index outside 1 <= |J| <= n-4 reads as zero.
        auto m_hat = [&](std::uint32_t j) -> long {
            const int size = popcount(j);
            if (size < 1 || size > n - 4) return 0;
            return eff[rest & ~j];
        };
        for (std::uint32_t mask = 0; mask <= full; ++mask) {
            if (!(mask & pbit) || popcount(mask) < 3) continue;
            const std::uint32_t jm = mask & ~pbit;
            long expect = out.d * (popcount(mask) - 2) + m_hat(jm);
            for (std::uint32_t k = jm; k; k &= k - 1)
                expect -= m_hat(k & ~(k - 1));
            if (eff[mask] != expect) {
                std::ostringstream msg;
                msg << "table is not the table of a divisor on the moduli space: "
                    << "subset {" << subset_labels(mask) << "} carries reduced "
                    << "coefficient " << eff[mask] << " where the class read off "
                    << "the marking-free subsets forces " << expect;
                throw precondition_error(msg.str());
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// The three divisor polynomials
// ---------------------------------------------------------------------------

namespace {

// Glued coordinate pairs of the seven-marking examples (0-based variables).
constexpr int kPairs7[3][2] = {{0, 1}, {2, 3}, {4, 5}};

// Product of (x_tvar - a)(x_tvar - b) over the glued pairs (a, b) other than
// `skip_pair`.
Poly glue_product(const VarContext& ctx, int tvar, int skip_pair) {
    Poly g = Poly::constant(ctx, 1);
    const Poly t = Poly::variable(ctx, tvar);
    for (int i = 0; i < 3; ++i) {
        if (i == skip_pair) continue;
        g = g * (t - Poly::variable(ctx, kPairs7[i][0]));
        g = g * (t - Poly::variable(ctx, kPairs7[i][1]));
    }
    return g;
}

} // namespace

Poly weierstrass_polynomial() {
    const VarContext ctx = VarContext::xs(7);
    PolyMatrix w(ctx, 3, 3);
    for (int i = 0; i < 3; ++i) {
        Poly g = glue_product(ctx, 6, i);
        Poly g1 = g.derivative(6);
        Poly g2 = g1.derivative(6);
        w.at(0, i) = g;
        w.at(1, i) = g1;
        w.at(2, i) = g2;
    }
    return determinant(w);
}

Poly bitangent_polynomial() {
    // Working context: x1..x6 markings, x7 the moving point, x8 the helper
    // secant parameter.
    const VarContext work = VarContext::xs(8);
    PolyMatrix rows(work, 3, 3);
    for (int i = 0; i < 3; ++i) {
        Poly gt = glue_product(work, 6, i);
        rows.at(0, i) = gt;
        rows.at(1, i) = glue_product(work, 7, i);
        rows.at(2, i) = gt.derivative(6);
    }
    const Poly det = determinant(rows);
    const Poly st = Poly::variable(work, 7) - Poly::variable(work, 6);
    const Poly quad = det.divided_exactly_by(st * st);
    if (quad.degree_in(7) != 2)
        throw internal_error("secant polynomial is not quadratic in the helper");

    // Coefficients of the helper variable: quad = A s^2 + B s + C.
    std::vector<std::pair<Mono, mpz_class>> parts[3];
    for (const auto& [m, c] : quad.terms()) {
        const int e = m.exponent(7);
        Mono stripped = m;
        stripped.set_exponent(7, 0);
        stripped.degree = static_cast<std::uint16_t>(m.degree - e);
        parts[e].emplace_back(stripped, c);
    }
    const Poly A = Poly::from_terms(work, std::move(parts[2]));
    const Poly B = Poly::from_terms(work, std::move(parts[1]));
    const Poly C = Poly::from_terms(work, std::move(parts[0]));
    const Poly disc = B * B - (A * C).scaled(4);
    if (disc.degree_in(7) != 0)
        throw internal_error("discriminant still involves the helper variable");

    const VarContext ctx = VarContext::xs(7);
    std::vector<int> map = {0, 1, 2, 3, 4, 5, 6, 0};  // helper slot is unused
    return disc.reindex(ctx, map);
}

Poly transversal_polynomial() {
    const VarContext ctx = VarContext::xs(10);
    const auto X = [&](int i) { return Poly::variable(ctx, i); };
    const auto Y = [&](int i) { return Poly::variable(ctx, i + 5); };

    PolyMatrix g(ctx, 5, 5);
    for (int i = 0; i < 5; ++i) g.at(i, i) = Poly::zero(ctx);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            PolyMatrix v(ctx, 4, 4);
            const Poly cols[4] = {X(i), Y(i), X(j), Y(j)};
            for (int c = 0; c < 4; ++c) {
                Poly pw = Poly::constant(ctx, 1);
                for (int r = 0; r < 4; ++r) {
                    v.at(r, c) = pw;
                    pw = pw * cols[c];
                }
            }
            const Poly entry = determinant(v)
                                   .divided_exactly_by(Y(i) - X(i))
                                   .divided_exactly_by(Y(j) - X(j));
            g.at(i, j) = entry;
            g.at(j, i) = entry;
        }
    return determinant(g);
}

} // namespace ht
