#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "ht/errors.hpp"
#include "ht/hypertree.hpp"
#include "ht/stable_curve.hpp"
#include "ht/util.hpp"
#include "oracle.hpp"

using namespace ht;

namespace {

Hypertree seven_vertex_example() {
    return Hypertree::create(7, {{1, 2, 7}, {3, 4, 7}, {5, 6, 7}, {1, 3, 5}, {2, 4, 6}});
}

Hypertree octahedron_black() {
    return Hypertree::create(6, {{1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

// Irreducible example with one hyperedge of size 4 (all valences 2).
Hypertree quad_example() {
    return Hypertree::create(8, {{1, 2, 3, 4}, {1, 5, 6}, {2, 6, 7}, {3, 7, 8}, {4, 5, 8}});
}

oracle::Flags oracle_flags(const Hypertree& h) {
    return oracle::validate(h.n(), h.edges());
}

void check_flags_match(const Hypertree& h) {
    auto lib = validate(h);
    auto ref = oracle_flags(h);
    CHECK(lib.has_min_size == ref.min_size);
    CHECK(lib.covers_twice == ref.covers_twice);
    CHECK(lib.normalization == ref.normalization);
    CHECK(lib.convexity == ref.convexity);
    CHECK(lib.irreducible == ref.irreducible);
}

int oracle_capacity_of(const SubsetCollection& c) {
    return oracle::capacity(c.ground, c.parts);
}

} // namespace

TEST_SUITE("hypertree") {

TEST_CASE("creation normalizes and rejects malformed input") {
    Hypertree h = Hypertree::create(5, {{3, 1, 4}, {5, 2, 1}});
    CHECK(h.edges() == std::vector<std::vector<int>>{{1, 2, 5}, {1, 3, 4}});
    CHECK(h.n() == 5);
    CHECK(h.edge_count() == 2);
    CHECK(h.edge_mask(0) == ((1u << 0) | (1u << 1) | (1u << 4)));
    CHECK_THROWS_AS(Hypertree::create(3, {{1, 2}}), input_error);
    CHECK_THROWS_AS(Hypertree::create(3, {{1, 2, 4}}), input_error);
    CHECK_THROWS_AS(Hypertree::create(3, {{1, 2, 2}}), input_error);
    CHECK_THROWS_AS(Hypertree::create(-1, {}), input_error);
    CHECK_THROWS_AS(Hypertree::create(32, {}), input_error);
    // Containment (including duplicates) is rejected.
    CHECK_THROWS_AS(Hypertree::create(4, {{1, 2, 3}, {1, 2, 3}}), input_error);
    CHECK_THROWS_AS(Hypertree::create(4, {{1, 2, 3}, {1, 2, 3, 4}}), input_error);
    CHECK(Hypertree::create(4, {}).edge_count() == 0);
}

TEST_CASE("all_triples and valences") {
    Hypertree h = seven_vertex_example();
    CHECK(h.all_triples());
    CHECK_FALSE(quad_example().all_triples());
    CHECK(valences(h) == std::vector<int>{0, 2, 2, 2, 2, 2, 2, 3});
    // Valence sum = 2*edge_count + n - 2 under normalization.
    int total = 0;
    for (int v : valences(h)) total += v;
    CHECK(total == 2 * h.edge_count() + h.n() - 2);
}

TEST_CASE("validation flags on reference examples") {
    auto good = validate(seven_vertex_example());
    CHECK(good.all());
    CHECK(good.witness.empty());
    CHECK(good.witness_labels.empty());
    CHECK(validate(octahedron_black()).all());
    CHECK(validate(quad_example()).all());

    // Single triangle covers each vertex once.
    auto lonely = validate(Hypertree::create(3, {{1, 2, 3}}));
    CHECK(lonely.has_min_size);
    CHECK_FALSE(lonely.covers_twice);
    CHECK(lonely.normalization);
    CHECK(lonely.convexity);
    CHECK_FALSE(lonely.irreducible);
    CHECK(lonely.witness_labels == std::vector<int>{1, 2, 3});

    // All four triples on 4 vertices: convexity fails on any three of them.
    auto packed = validate(Hypertree::create(4, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}));
    CHECK(packed.covers_twice);
    CHECK_FALSE(packed.normalization);
    CHECK_FALSE(packed.convexity);
    CHECK_FALSE(packed.irreducible);
    CHECK(packed.witness == std::vector<int>{0, 1, 2});

    // Disjoint union of two valid hypertrees: convex but not irreducible.
    Hypertree both = Hypertree::create(
        12, {{1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5},
             {7, 9, 11}, {7, 10, 12}, {8, 9, 12}, {8, 10, 11}});
    auto split = validate(both);
    CHECK(split.has_min_size);
    CHECK(split.covers_twice);
    CHECK_FALSE(split.normalization);
    CHECK(split.convexity);
    CHECK_FALSE(split.irreducible);
    CHECK(split.witness == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("validation agrees with the reference implementation") {
    check_flags_match(seven_vertex_example());
    check_flags_match(octahedron_black());
    check_flags_match(quad_example());
    check_flags_match(Hypertree::create(3, {{1, 2, 3}}));
    check_flags_match(Hypertree::create(4, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}));

    // Deterministic random families.
    SplitMix64 rng(99);
    int tested = 0;
    while (tested < 60) {
        int n = 4 + static_cast<int>(rng.below(4)); // 4..7
        int d = 2 + static_cast<int>(rng.below(4)); // 2..5
        std::vector<std::vector<int>> edges;
        for (int i = 0; i < d; ++i) {
            int size = 3 + static_cast<int>(rng.below(2));
            std::set<int> e;
            while (static_cast<int>(e.size()) < size)
                e.insert(1 + static_cast<int>(rng.below(n)));
            edges.emplace_back(e.begin(), e.end());
        }
        try {
            Hypertree h = Hypertree::create(n, edges);
            check_flags_match(h);
            ++tested;
        } catch (const input_error&) {
            // containment or duplicate; draw again
        }
    }
}

TEST_CASE("validation budget") {
    std::vector<std::vector<int>> edges;
    for (int k = 3; k <= 27; ++k) edges.push_back({1, 2, k});
    Hypertree wide = Hypertree::create(27, edges);
    CHECK(wide.edge_count() == 25);
    CHECK_THROWS_AS(validate(wide), budget_error);
}

TEST_CASE("subset collection creation") {
    auto c = SubsetCollection::create({3, 1, 2}, {{3, 2, 1}});
    CHECK(c.ground == std::vector<int>{1, 2, 3});
    CHECK(c.parts == std::vector<std::vector<int>>{{1, 2, 3}});
    CHECK_THROWS_AS(SubsetCollection::create({1, 1, 2}, {}), input_error);
    CHECK_THROWS_AS(SubsetCollection::create({1, 2, 3}, {{1, 2}}), input_error);
    CHECK_THROWS_AS(SubsetCollection::create({1, 2, 3}, {{1, 2, 4}}), input_error);
    // Duplicate parts collapse to one.
    auto d = SubsetCollection::create({1, 2, 3}, {{1, 2, 3}, {1, 2, 3}});
    CHECK(d.parts.size() == 1);
}

TEST_CASE("capacity on basic collections") {
    CHECK(capacity(SubsetCollection::create({1, 2, 3}, {})) == 0);
    CHECK(capacity(SubsetCollection::create({1, 2, 3}, {{1, 2, 3}})) == 1);
    CHECK(capacity(SubsetCollection::create({1, 2, 3, 4}, {{1, 2, 3, 4}})) == 2);
    // A hypertree's own edge collection has capacity n-2.
    CHECK(capacity(contract(seven_vertex_example(), {1, 2, 3, 4, 5, 6, 7})) == 5);
    CHECK(capacity(contract(octahedron_black(), {1, 2, 3, 4, 5, 6})) == 4);
    CHECK(capacity(contract(quad_example(), {1, 2, 3, 4, 5, 6, 7, 8})) == 6);
}

TEST_CASE("capacity agrees with exhaustive search") {
    // Contractions of the reference hypertrees.
    for (const Hypertree& h : {seven_vertex_example(), octahedron_black()}) {
        int checked = 0;
        for (std::uint32_t mask = 1; mask < (1u << h.n()); ++mask) {
            if (__builtin_popcount(mask) > 4) continue;
            SubsetCollection c = contract(h, mask_labels(mask));
            try {
                CHECK(capacity(c) == oracle_capacity_of(c));
                ++checked;
            } catch (const std::runtime_error&) {
                // oracle pool too large; skip
            }
        }
        CHECK(checked > 20);
    }
    // Random small collections.
    SplitMix64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<int> ground{0, 1, 2, 3, 4, 5};
        int k = 1 + static_cast<int>(rng.below(3));
        std::vector<std::vector<int>> parts;
        for (int i = 0; i < k; ++i) {
            int size = 3 + static_cast<int>(rng.below(2));
            std::set<int> p;
            while (static_cast<int>(p.size()) < size)
                p.insert(static_cast<int>(rng.below(6)));
            parts.emplace_back(p.begin(), p.end());
        }
        SubsetCollection c = SubsetCollection::create(ground, parts);
        CHECK(capacity(c) == oracle_capacity_of(c));
    }
}

TEST_CASE("capacity never exceeds ground size minus two") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<int> ground{1, 2, 3, 4, 5, 6, 7};
        int k = 1 + static_cast<int>(rng.below(4));
        std::vector<std::vector<int>> parts;
        for (int i = 0; i < k; ++i) {
            int size = 3 + static_cast<int>(rng.below(3));
            std::set<int> p;
            while (static_cast<int>(p.size()) < size)
                p.insert(1 + static_cast<int>(rng.below(7)));
            parts.emplace_back(p.begin(), p.end());
        }
        SubsetCollection c = SubsetCollection::create(ground, parts);
        CHECK(capacity(c) <= static_cast<int>(c.ground.size()) - 2);
    }
}

TEST_CASE("contraction") {
    Hypertree h = seven_vertex_example();
    SubsetCollection full = contract(h, {1, 2, 3, 4, 5, 6, 7});
    CHECK(full.ground == std::vector<int>{1, 2, 3, 4, 5, 6, 7});
    CHECK(full.parts == h.edges());

    SubsetCollection small = contract(h, {1, 2, 7});
    CHECK(small.ground == std::vector<int>{1, 2, 7}); // collapse point unused
    CHECK(small.parts == std::vector<std::vector<int>>{{1, 2, 7}});

    SubsetCollection mid = contract(h, {1, 2, 3, 4, 7});
    CHECK(mid.ground == std::vector<int>{0, 1, 2, 3, 4, 7});
    CHECK(mid.parts == std::vector<std::vector<int>>{
                           {0, 1, 3}, {0, 2, 4}, {1, 2, 7}, {3, 4, 7}});
    CHECK(capacity(mid) == 4);

    CHECK_THROWS_AS(contract(h, {}), input_error);
    CHECK_THROWS_AS(contract(h, {8}), input_error);
}

TEST_CASE("restriction and its closed-form capacity") {
    Hypertree h = quad_example();
    SubsetCollection r = restrict_away(h, {5, 6, 7, 8});
    CHECK(r.ground == std::vector<int>{1, 2, 3, 4});
    CHECK(r.parts == std::vector<std::vector<int>>{{1, 2, 3, 4}});
    CHECK(restricted_capacity(h, {5, 6, 7, 8}) == 2);

    // The closed form equals the capacity of the restriction, for every I.
    for (const Hypertree& g : {seven_vertex_example(), octahedron_black(), quad_example()}) {
        for (std::uint32_t mask = 0; mask < (1u << g.n()); ++mask) {
            std::vector<int> I = mask_labels(mask);
            if (mask == 0) I.clear();
            CHECK(restricted_capacity(g, I) == capacity(restrict_away(g, I)));
        }
    }
}

TEST_CASE("wheels of the seven vertex example") {
    auto w = wheels(seven_vertex_example());
    std::vector<std::vector<int>> expected{
        {1, 3, 7}, {1, 5, 7}, {2, 4, 7}, {2, 6, 7}, {3, 5, 7}, {4, 6, 7}};
    CHECK(w == expected);
}

TEST_CASE("wheels of the octahedron are its white faces") {
    auto w = wheels(octahedron_black());
    std::vector<std::vector<int>> expected{{1, 3, 6}, {1, 4, 5}, {2, 3, 5}, {2, 4, 6}};
    CHECK(w == expected);
    CHECK(wheels(Hypertree::create(3, {{1, 2, 3}})).empty());
}

TEST_CASE("genericity") {
    CHECK(is_generic(octahedron_black()));
    // Independent evaluation of the same criterion through the exhaustive
    // capacity oracle.
    Hypertree h = seven_vertex_example();
    auto wh = wheels(h);
    std::set<std::vector<int>> wheel_set(wh.begin(), wh.end());
    std::set<std::vector<int>> edge_set(h.edges().begin(), h.edges().end());
    bool generic_by_oracle = true;
    for (int i = 1; i <= 7; ++i)
        for (int j = i + 1; j <= 7; ++j)
            for (int k = j + 1; k <= 7; ++k) {
                std::vector<int> t{i, j, k};
                if (edge_set.count(t) || wheel_set.count(t)) continue;
                std::vector<int> keep;
                for (int v = 1; v <= 7; ++v)
                    if (v != i && v != j && v != k) keep.push_back(v);
                SubsetCollection c = contract(h, keep);
                if (oracle_capacity_of(c) != 3) generic_by_oracle = false;
            }
    CHECK(is_generic(h) == generic_by_oracle);

    CHECK_THROWS_AS(is_generic(quad_example()), precondition_error);
    CHECK_THROWS_AS(
        is_generic(Hypertree::create(4, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}})),
        precondition_error);
}

TEST_CASE("boundary contraction predicate") {
    Hypertree h = seven_vertex_example();
    // Complement of size 2.
    CHECK_FALSE(is_boundary_contracted(h, {1, 2, 3, 4, 5}));
    // Complement equal to a hyperedge.
    CHECK_FALSE(is_boundary_contracted(h, {3, 4, 5, 6}));
    // Complement {1,3,5,7} lies in no hyperedge.
    CHECK(is_boundary_contracted(h, {2, 4, 6}));
    CHECK_THROWS_AS(is_boundary_contracted(h, {}), precondition_error);
    CHECK_THROWS_AS(is_boundary_contracted(h, {1, 2, 3, 4, 5, 6}), precondition_error);

    // Equivalent characterization: the stratum survives exactly when
    // contraction capacity plus restriction capacity falls short of n-3.
    for (const Hypertree& g : {seven_vertex_example(), octahedron_black()}) {
        for (std::uint32_t mask = 1; mask < (1u << g.n()); ++mask) {
            int size = __builtin_popcount(mask);
            if (size < 1 || size > g.n() - 2) continue;
            std::vector<int> I = mask_labels(mask);
            bool survives = is_boundary_contracted(g, I);
            int total = capacity(contract(g, I)) + restricted_capacity(g, I);
            CHECK(survives == (g.n() - 3 != total));
        }
    }
}

TEST_CASE("stable model shapes") {
    StableCurveGraph g7 = stable_model(seven_vertex_example());
    CHECK(g7.black_count == 5);
    CHECK(g7.white_count() == 1);
    CHECK(g7.nodes.size() == 9);
    CHECK(g7.connected());
    int total = 0;
    for (const auto& c : g7.components) total += c.dualizing_degree;
    CHECK(total == 2 * 5 - 4);

    StableCurveGraph g6 = stable_model(octahedron_black());
    CHECK(g6.black_count == 4);
    CHECK(g6.white_count() == 0);
    CHECK(g6.nodes.size() == 6);
    CHECK(g6.connected());

    StableCurveGraph g8 = stable_model(quad_example());
    CHECK(g8.black_count == 5);
    CHECK(g8.white_count() == 0);
    CHECK(g8.nodes.size() == 8);
    int total8 = 0;
    for (const auto& c : g8.components) total8 += c.dualizing_degree;
    CHECK(total8 == 2 * 5 - 4);

    // Vertex of valence 1 violates the precondition.
    CHECK_THROWS_AS(stable_model(Hypertree::create(4, {{1, 2, 3}, {1, 2, 4}})),
                    precondition_error);
}

TEST_CASE("stability of multidegrees") {
    StableCurveGraph g = stable_model(octahedron_black());
    CHECK(gieseker_stable(g, canonical_multidegree(g)));
    CHECK(canonical_multidegree(g) == std::vector<int>{1, 1, 1, 1});
    // Piling the degree on one component destabilizes.
    CHECK_FALSE(gieseker_stable(g, {4, 0, 0, 0}));
    CHECK_THROWS_AS(gieseker_stable(g, {1, 1}), input_error);

    StableCurveGraph g7 = stable_model(seven_vertex_example());
    CHECK(gieseker_stable(g7, canonical_multidegree(g7)));

    StableCurveGraph tiny;
    tiny.components.resize(2);
    tiny.components[0].black = tiny.components[1].black = true;
    tiny.black_count = 2;
    tiny.nodes = {{0, 1}};
    CHECK_THROWS_AS(gieseker_stable(tiny, {1, 1}), precondition_error);
}

TEST_CASE("label mask helpers") {
    CHECK(label_set_mask(5, {1, 5}) == 0b10001u);
    CHECK(mask_labels(0b10001u) == std::vector<int>{1, 5});
    CHECK(mask_labels(0).empty());
    CHECK_THROWS_AS(label_set_mask(4, {5}), input_error);
}

} // TEST_SUITE
