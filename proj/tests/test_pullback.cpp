#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ht/constructions.hpp"
#include "ht/divisor.hpp"
#include "ht/enumerate.hpp"
#include "ht/errors.hpp"
#include "ht/hypertree.hpp"
#include "ht/poly.hpp"
#include "ht/polymatrix.hpp"
#include "ht/pullback.hpp"
#include "ht/triangulation.hpp"

using namespace ht;

namespace {

const Poly& wronskian() {
    static const Poly w = weierstrass_polynomial();
    return w;
}

const Poly& discriminant() {
    static const Poly d = bitangent_polynomial();
    return d;
}

const Poly& transversal() {
    static const Poly f = transversal_polynomial();
    return f;
}

std::vector<int> key(std::initializer_list<int> labels) { return labels; }

// The number of glued pairs fully inside `k` and the number of pairs met in
// exactly one element, for glue pairs (1,2),(3,4),(5,6).
std::pair<int, int> glue_profile7(const std::vector<int>& k) {
    bool in[7] = {false};
    for (int v : k) in[v] = true;
    int pairs = 0, singles = 0;
    for (int i = 1; i <= 5; i += 2) {
        if (in[i] && in[i + 1]) ++pairs;
        else if (in[i] || in[i + 1]) ++singles;
    }
    return {pairs, singles};
}

// Same for ten variables glued as (i, i+5), i = 1..5.
std::pair<int, int> glue_profile10(const std::vector<int>& k) {
    bool in[11] = {false};
    for (int v : k) in[v] = true;
    int pairs = 0, singles = 0;
    for (int i = 1; i <= 5; ++i) {
        if (in[i] && in[i + 5]) ++pairs;
        else if (in[i] || in[i + 5]) ++singles;
    }
    return {pairs, singles};
}

long entry(const KapranovClass& c, std::initializer_list<int> labels) {
    const auto it = c.m.find(std::vector<int>(labels));
    REQUIRE(it != c.m.end());
    CHECK(it->second.kind == ClassEntry::Kind::exact);
    return it->second.value;
}

} // namespace

TEST_SUITE("pullback") {

TEST_CASE("multiplicity tables on simple polynomials") {
    VarContext ctx = VarContext::xs(2);
    Poly f = Poly::variable(ctx, 0) - Poly::variable(ctx, 1);
    DiagonalMultiplicityTable t = multiplicity_table(f);
    CHECK(t.n == 2);
    CHECK(t.entries.size() == 4);
    CHECK(t.at(0b11) == 1);

    CHECK_THROWS_AS(t.at(0b01), input_error);   // singleton
    CHECK_THROWS_AS(t.at(0b100), input_error);  // out of range

    CHECK_THROWS_AS(multiplicity_table(Poly::zero(ctx)), precondition_error);
    VarContext one = VarContext::xs(1);
    CHECK_THROWS_AS(multiplicity_table(Poly::variable(one, 0)), input_error);
}

TEST_CASE("multiplicity table fallback for non-invariant polynomials") {
    // f = (x1-x2)^2 x3 + (x1-x2)^3 is not translation invariant (the sum of
    // its partial derivatives is (x1-x2)^2), so the table is forced through
    // the generic substitution route.
    VarContext ctx = VarContext::xs(3);
    Poly s = Poly::variable(ctx, 0) - Poly::variable(ctx, 1);
    Poly f = s * s * Poly::variable(ctx, 2) + s * s * s;
    REQUIRE_FALSE(f.is_translation_invariant());

    DiagonalMultiplicityTable t = multiplicity_table(f);
    CHECK(t.at(0b011) == 2);  // {1,2}
    CHECK(t.at(0b101) == 0);  // {1,3}
    CHECK(t.at(0b110) == 0);  // {2,3}
    CHECK(t.at(0b111) == 2);  // {1,2,3}
    CHECK(t.at(0b011) == f.diagonal_multiplicity({0, 1}));
    CHECK(t.at(0b111) == f.diagonal_multiplicity({0, 1, 2}));
}

TEST_CASE("fast table construction matches per-subset queries") {
    Hypertree h7 = Hypertree::create(
        7, {{1, 2, 7}, {3, 4, 7}, {5, 6, 7}, {1, 3, 5}, {2, 4, 6}});
    Poly eq = hypertree_equation(h7);
    REQUIRE(eq.is_translation_invariant());
    DiagonalMultiplicityTable t = multiplicity_table(eq);
    for (std::uint32_t mask = 0; mask < (1u << 7); ++mask) {
        if (__builtin_popcount(mask) < 2) {
            CHECK(t.entries[mask] == -1);
            continue;
        }
        std::vector<int> vars;
        for (int v = 0; v < 7; ++v)
            if (mask & (1u << v)) vars.push_back(v);
        CHECK(t.entries[mask] == eq.diagonal_multiplicity(vars));
    }
}

TEST_CASE("dummy-variable extension agrees with embedding") {
    // Tiny case by hand: x1 - x2 with a third variable appended.
    VarContext two = VarContext::xs(2);
    Poly f = Poly::variable(two, 0) - Poly::variable(two, 1);
    DiagonalMultiplicityTable e = extend_with_dummy(multiplicity_table(f));
    CHECK(e.n == 3);
    CHECK(e.at(0b011) == 1);  // {1,2}
    CHECK(e.at(0b101) == 0);  // {1,3}: the new variable never collides
    CHECK(e.at(0b110) == 0);  // {2,3}
    CHECK(e.at(0b111) == 1);  // {1,2,3} collapses onto {1,2}

    // A polynomial that simply ignores its last variable must produce the
    // same table as the extension of its restriction.
    const Poly& w = wronskian();
    VarContext eight = VarContext::xs(8);
    Poly lifted = w.reindex(eight, {0, 1, 2, 3, 4, 5, 6});
    DiagonalMultiplicityTable direct = multiplicity_table(lifted);
    DiagonalMultiplicityTable ext = extend_with_dummy(multiplicity_table(w));
    CHECK(direct.n == ext.n);
    CHECK(direct.entries == ext.entries);
}

TEST_CASE("conversion on the harmonic cross-ratio polynomial") {
    // f = (x1-x3)(x2-x4) + (x1-x4)(x2-x3) cuts the locus where the four
    // points form a harmonic quadruple; on four markings the class has no
    // exceptional coefficients at all, only the hyperplane degree.
    VarContext ctx = VarContext::xs(4);
    auto x = [&](int i) { return Poly::variable(ctx, i - 1); };
    Poly f = (x(1) - x(3)) * (x(2) - x(4)) + (x(1) - x(4)) * (x(2) - x(3));
    DiagonalMultiplicityTable t = multiplicity_table(f);
    CHECK(t.at(0b1111) == 2);

    KapranovClass c = fm_to_kapranov(t, 4);
    CHECK(c.n == 4);
    CHECK(c.marking == 4);
    CHECK(c.d == 1);
    CHECK(c.m.empty());

    // Multiplying by a difference of coordinates only adds boundary
    // components, which the conversion discards — for pairs away from the
    // marking and pairs through it alike.
    KapranovClass c12 = fm_to_kapranov(multiplicity_table(f * (x(1) - x(2))), 4);
    KapranovClass c14 = fm_to_kapranov(multiplicity_table(f * (x(1) - x(4))), 4);
    CHECK(c12.d == c.d);
    CHECK(c12.m == c.m);
    CHECK(c14.d == c.d);
    CHECK(c14.m == c.m);
}

TEST_CASE("pure products of coordinate differences give the zero class") {
    // Every irreducible factor lies over the boundary, so nothing survives.
    VarContext ctx = VarContext::xs(5);
    Poly f = Poly::constant(ctx, 1);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            f = f * (Poly::variable(ctx, i) - Poly::variable(ctx, j));
    KapranovClass c = fm_to_kapranov(multiplicity_table(f), 5);
    CHECK(c.d == 0);
    CHECK(c.m.size() == 4);
    for (const auto& [k, e] : c.m) {
        CHECK(k.size() == 1);
        CHECK(e.value == 0);
        CHECK(e.kind == ClassEntry::Kind::exact);
    }
}

TEST_CASE("relabeling the non-marking variables permutes the class") {
    const Poly& w = wronskian();
    KapranovClass base = fm_to_kapranov(multiplicity_table(w), 7);

    // Cycle the six glued coordinates: 1 -> 2 -> ... -> 6 -> 1.
    VarContext ctx = VarContext::xs(7);
    std::vector<int> map = {1, 2, 3, 4, 5, 0, 6};
    Poly moved = w.reindex(ctx, map);
    KapranovClass turned = fm_to_kapranov(multiplicity_table(moved), 7);

    CHECK(turned.d == base.d);
    CHECK(turned.m.size() == base.m.size());
    for (const auto& [k, e] : base.m) {
        std::vector<int> image;
        for (int v : k) image.push_back(map[v - 1] + 1);
        std::sort(image.begin(), image.end());
        CHECK(turned.m.at(image) == e);
    }
}

TEST_CASE("wronskian polynomial structure") {
    const Poly& w = wronskian();
    CHECK(w.degree() == 9);
    CHECK(w.terms().size() == 330);
    CHECK(w.is_translation_invariant());

    VarContext ctx = VarContext::xs(7);
    // Swapping the two coordinates of one glued pair fixes every matrix
    // entry, so the determinant is unchanged.
    CHECK(w.reindex(ctx, {1, 0, 2, 3, 4, 5, 6}) == w);
    // Exchanging two glued pairs wholesale swaps two columns.
    CHECK(w.reindex(ctx, {2, 3, 0, 1, 4, 5, 6}) == -w);

    CHECK(multiplicity_table(w).at(0b0111111) == 3);
}

TEST_CASE("wronskian divisor class") {
    KapranovClass c = fm_to_kapranov(multiplicity_table(wronskian()), 7);
    CHECK(c.n == 7);
    CHECK(c.marking == 7);
    CHECK(c.d == 3);
    CHECK(c.m.size() == 41);

    std::map<std::vector<int>, ClassEntry> expected;
    const std::set<std::vector<int>> glue = {{1, 2}, {3, 4}, {5, 6}};
    for (std::uint32_t mask = 1; mask < (1u << 6); ++mask) {
        const int size = __builtin_popcount(mask);
        if (size > 3) continue;
        std::vector<int> k;
        for (int v = 0; v < 6; ++v)
            if (mask & (1u << v)) k.push_back(v + 1);
        long value = 0;
        if (size == 1 || glue.count(k)) value = 1;
        expected[k] = ClassEntry{ClassEntry::Kind::exact, value};
    }
    CHECK(c.m == expected);
}

TEST_CASE("bitangent discriminant construction") {
    const Poly& d = discriminant();
    CHECK(d.degree() == 16);
    CHECK(d.terms().size() == 8527);
    CHECK(d.is_translation_invariant());

    VarContext ctx = VarContext::xs(7);
    // Within-pair swaps fix the construction entirely; exchanging two glued
    // pairs negates the 3x3 determinant but the discriminant of a quadratic
    // is invariant under negating it.
    CHECK(d.reindex(ctx, {1, 0, 2, 3, 4, 5, 6}) == d);
    CHECK(d.reindex(ctx, {2, 3, 0, 1, 4, 5, 6}) == d);
    CHECK(d.reindex(ctx, {4, 5, 2, 3, 0, 1, 6}) == d);
}

TEST_CASE("bitangent divisor class") {
    KapranovClass c = fm_to_kapranov(multiplicity_table(discriminant()), 7);
    CHECK(c.n == 7);
    CHECK(c.marking == 7);
    CHECK(c.d == 8);
    CHECK(c.m.size() == 41);

    // Computed once and frozen: every singleton carries 4; every two-element
    // subset carries 2; a triple carries 2 when it meets each glued pair in
    // exactly one element (8 such transversal triples) and 0 when it
    // contains a full glued pair (12 such).
    int transversal_triples = 0, mixed_triples = 0;
    for (const auto& [k, e] : c.m) {
        CHECK(e.kind == ClassEntry::Kind::exact);
        const auto [pairs, singles] = glue_profile7(k);
        if (k.size() == 1) {
            CHECK(e.value == 4);
        } else if (k.size() == 2) {
            CHECK(e.value == 2);
        } else if (singles == 3) {
            CHECK(e.value == 2);
            ++transversal_triples;
        } else {
            CHECK(pairs == 1);
            CHECK(e.value == 0);
            ++mixed_triples;
        }
    }
    CHECK(transversal_triples == 8);
    CHECK(mixed_triples == 12);
}

TEST_CASE("chord pairing determinants and the transversal polynomial") {
    // The pairing of two chords (x_i, y_i), (x_j, y_j) is the 4x4 power
    // matrix determinant, which factors into all six pairwise differences;
    // dividing out the two within-chord differences leaves the four cross
    // differences.
    VarContext ctx = VarContext::xs(10);
    auto v = [&](int i) { return Poly::variable(ctx, i); };
    PolyMatrix m(ctx, 4, 4);
    const Poly cols[4] = {v(0), v(5), v(1), v(6)};  // x1, y1, x2, y2
    for (int c = 0; c < 4; ++c) {
        Poly pw = Poly::constant(ctx, 1);
        for (int r = 0; r < 4; ++r) {
            m.at(r, c) = pw;
            pw = pw * cols[c];
        }
    }
    Poly det = determinant(m);
    Poly product = Poly::constant(ctx, 1);
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) product = product * (cols[b] - cols[a]);
    CHECK(det == product);

    Poly pairing =
        det.divided_exactly_by(cols[1] - cols[0]).divided_exactly_by(cols[3] - cols[2]);
    CHECK(pairing.degree() == 4);
    CHECK(pairing.terms().size() == 15);

    const Poly& f = transversal();
    CHECK(f.degree() == 20);
    CHECK(f.terms().size() == 335820);
    CHECK(f.is_translation_invariant());

    // Swapping the endpoints of one chord fixes f, and so does relabeling
    // the five chords simultaneously in both coordinate blocks.
    CHECK(f.reindex(ctx, {5, 1, 2, 3, 4, 0, 6, 7, 8, 9}) == f);
    CHECK(f.reindex(ctx, {1, 2, 3, 4, 0, 6, 7, 8, 9, 5}) == f);
}

TEST_CASE("transversal divisor class and the hyperplane bound") {
    DiagonalMultiplicityTable base = multiplicity_table(transversal());
    CHECK(base.at(0b1111111111) == 20);
    KapranovClass c = fm_to_kapranov(extend_with_dummy(base), 11);
    CHECK(c.n == 11);
    CHECK(c.marking == 11);
    CHECK(c.d == 20);
    CHECK(c.m.size() == 967);

    // Frozen orbit values, indexed by (chords fully inside K, chords met in
    // exactly one endpoint).  The coefficient only depends on this profile.
    const std::map<std::pair<int, int>, long> orbit = {
        {{0, 1}, 16}, {{0, 2}, 12}, {{0, 3}, 9}, {{0, 4}, 7}, {{0, 5}, 6},
        {{1, 0}, 12}, {{1, 1}, 8},  {{1, 2}, 5}, {{1, 3}, 3}, {{1, 4}, 3},
        {{2, 0}, 6},  {{2, 1}, 3},  {{2, 2}, 1}, {{2, 3}, 1}, {{3, 0}, 2},
        {{3, 1}, 0}};

    long singleton_sum = 0;
    for (const auto& [k, e] : c.m) {
        CHECK(e.kind == ClassEntry::Kind::exact);
        CHECK(k.back() <= 10);  // the eleventh marking never indexes a key
        CHECK(e.value == orbit.at(glue_profile10(k)));
        if (k.size() == 1) singleton_sum += e.value;
    }
    CHECK(singleton_sum == 160);

    // The locus sits inside the union of the 20 hyperplanes x_i = x_j with
    // i < j in one coordinate block, so on the block-aligned representative
    // of each profile (complete chords first, then first-endpoint singles)
    // the coefficient is bounded by the number of hyperplanes avoiding it.
    std::vector<std::uint32_t> planes;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            planes.push_back((1u << i) | (1u << j));
            planes.push_back((1u << (i + 5)) | (1u << (j + 5)));
        }
    for (const auto& [profile, value] : orbit) {
        const auto [a, b] = profile;
        std::uint32_t mask = 0;
        std::vector<int> k;
        for (int i = 0; i < a; ++i) {
            mask |= (1u << i) | (1u << (i + 5));
            k.push_back(i + 1);
            k.push_back(i + 6);
        }
        for (int i = a; i < a + b; ++i) {
            mask |= 1u << i;
            k.push_back(i + 1);
        }
        std::sort(k.begin(), k.end());
        long disjoint = 0;
        for (std::uint32_t p : planes)
            if ((p & mask) == 0) ++disjoint;
        CHECK(c.m.at(k).value == value);
        CHECK(value <= disjoint);
        // The bound is attained exactly on the all-chords profiles.
        if (b == 0) CHECK(value == disjoint);
    }
}

TEST_CASE("defining equations and class rules tell one story") {
    // For a divisor pulled back through the map dropping an extra marking,
    // the table route and the combinatorial coefficient rules must agree:
    // identical keys, identical exact values, and every lower-bound entry
    // actually below or at the true coefficient.
    auto compare = [](const Hypertree& h) {
        const int n = h.n();
        KapranovClass fm = fm_to_kapranov(
            extend_with_dummy(multiplicity_table(hypertree_equation(h))), n + 1);
        KapranovClass rules = class_coefficients(h);
        CHECK(fm.n == rules.n);
        CHECK(fm.marking == rules.marking);
        CHECK(fm.d == rules.d);
        CHECK(fm.m.size() == rules.m.size());
        long singleton_sum = 0;
        for (const auto& [j, e] : rules.m) {
            const auto it = fm.m.find(j);
            REQUIRE(it != fm.m.end());
            CHECK(it->second.kind == ClassEntry::Kind::exact);
            if (e.kind == ClassEntry::Kind::exact)
                CHECK(e.value == it->second.value);
            else
                CHECK(e.value <= it->second.value);
            if (j.size() == 1) singleton_sum += it->second.value;
        }
        CHECK(singleton_sum == static_cast<long>(n - 2) * fm.d);
    };

    for (int n : {6, 7, 8, 9})
        for (const auto& entry : enumerate_irreducible(n))
            if (entry.hypertree.all_triples()) compare(entry.hypertree);

    // On the octahedral hypertree the complement of every wheel is itself a
    // hyperedge, and the true coefficient there is exactly 1.
    auto [black, white] = black_white_hypertrees(octahedron());
    KapranovClass fm = fm_to_kapranov(
        extend_with_dummy(multiplicity_table(hypertree_equation(black))), 7);
    const std::uint32_t full = (1u << 6) - 1;
    auto wheel_list = wheels(black);
    CHECK(wheel_list.size() == 4);
    for (const auto& w : wheel_list) {
        std::vector<int> comp = mask_labels(full & ~label_set_mask(6, w));
        CHECK(entry(fm, {comp[0], comp[1], comp[2]}) == 1);
    }
}

TEST_CASE("conversion rejects malformed input") {
    const Poly& w = wronskian();
    DiagonalMultiplicityTable t = multiplicity_table(w);

    CHECK_THROWS_AS(fm_to_kapranov(t, 0), input_error);
    CHECK_THROWS_AS(fm_to_kapranov(t, 8), input_error);

    DiagonalMultiplicityTable holes = t;
    holes.entries[0b0000111] = -1;
    CHECK_THROWS_AS(fm_to_kapranov(holes, 7), input_error);

    DiagonalMultiplicityTable truncated = t;
    truncated.entries.pop_back();
    CHECK_THROWS_AS(fm_to_kapranov(truncated, 7), input_error);

    VarContext three = VarContext::xs(3);
    Poly small = Poly::variable(three, 0) - Poly::variable(three, 1);
    CHECK_THROWS_AS(fm_to_kapranov(multiplicity_table(small), 3), input_error);
}

TEST_CASE("strict conversion detects inconsistent tables") {
    const DiagonalMultiplicityTable t = multiplicity_table(wronskian());

    // Bumping an entry through the marking breaks the linear relations the
    // image of the pullback must satisfy, at that very subset.
    {
        DiagonalMultiplicityTable bad = t;
        bad.entries[0b1000011] += 1;  // {1,2,7}
        try {
            fm_to_kapranov(bad, 7);
            FAIL("inconsistent table was accepted");
        } catch (const precondition_error& e) {
            CHECK(std::string(e.what()).find("{1,2,7}") != std::string::npos);
        }
        // Without the consistency sweep the same table converts quietly.
        KapranovClass loose = fm_to_kapranov(bad, 7, false);
        CHECK(loose.d == 3);
    }

    // Bumping a marking-free entry shifts one read-off coefficient and is
    // caught where that coefficient re-enters a relation through the marking.
    {
        DiagonalMultiplicityTable bad = t;
        bad.entries[0b0000111] += 1;  // {1,2,3}
        try {
            fm_to_kapranov(bad, 7);
            FAIL("inconsistent table was accepted");
        } catch (const precondition_error& e) {
            CHECK(std::string(e.what()).find("{4,5,6,7}") != std::string::npos);
        }
    }
}

} // TEST_SUITE
