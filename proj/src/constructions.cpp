#include "ht/constructions.hpp"

#include <algorithm>
#include <map>

namespace ht {

BicoloredTriangulation octahedron() {
    return BicoloredTriangulation::create(
        6, {{1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}},
        {{1, 3, 6}, {1, 4, 5}, {2, 3, 5}, {2, 4, 6}});
}

BicoloredTriangulation bipyramid(int k) {
    if (k < 3) throw precondition_error("bipyramid requires k >= 3");
    const int n = 2 * k + 2;
    if (n > 31) throw budget_error("bipyramid too large for the supported label range");
    auto equator = [&](int i) {  // i in 1..2k, cyclic
        int j = ((i - 1) % (2 * k)) + 1;
        return j + 2;
    };
    std::vector<std::vector<int>> black, white;
    for (int i = 1; i <= 2 * k; ++i) {
        std::vector<int> top{1, equator(i), equator(i + 1)};
        std::vector<int> bottom{2, equator(i), equator(i + 1)};
        // {1,3,4} (i = 1) is black; colors alternate around each pole, and
        // evenness across equator edges forces the bottom parity to flip.
        if (i % 2 == 1) {
            black.push_back(top);
            white.push_back(bottom);
        } else {
            white.push_back(top);
            black.push_back(bottom);
        }
    }
    return BicoloredTriangulation::create(n, std::move(black), std::move(white));
}

BicoloredTriangulation quadruple(const BicoloredTriangulation& t) {
    if (!validate_triangulation(t).all())
        throw input_error("not a valid bicolored sphere triangulation");
    // Midpoint labels n+1.. in ascending edge order.
    std::map<std::pair<int, int>, int> midpoint;
    auto note_edge = [&](int a, int b) {
        midpoint[{std::min(a, b), std::max(a, b)}] = 0;
    };
    for (const auto& f : t.black) {
        note_edge(f[0], f[1]);
        note_edge(f[0], f[2]);
        note_edge(f[1], f[2]);
    }
    int next = t.n;
    for (auto& [e, label] : midpoint) label = ++next;
    if (next > 31) throw budget_error("refined triangulation exceeds the supported label range");

    std::vector<std::vector<int>> black, white;
    auto mid = [&](int a, int b) { return midpoint.at({std::min(a, b), std::max(a, b)}); };
    auto split = [&](const std::vector<int>& f, bool is_black) {
        int a = f[0], b = f[1], c = f[2];
        int mab = mid(a, b), mac = mid(a, c), mbc = mid(b, c);
        auto& same = is_black ? black : white;
        auto& opposite = is_black ? white : black;
        same.push_back({a, mab, mac});
        same.push_back({b, mab, mbc});
        same.push_back({c, mac, mbc});
        opposite.push_back({mab, mac, mbc});
    };
    for (const auto& f : t.black) split(f, true);
    for (const auto& f : t.white) split(f, false);
    return BicoloredTriangulation::create(next, std::move(black), std::move(white));
}

Hypertree fibonacci_extend(const Hypertree& h, int v, int a, std::optional<int> role) {
    if (!h.all_triples())
        throw precondition_error("extension requires all hyperedges of size 3");
    if (!validate(h).irreducible)
        throw precondition_error("extension requires an irreducible hypertree");
    const int n = h.n();
    if (v < 1 || v > n) throw input_error("vertex label out of range");
    if (a < 1 || a > n) throw input_error("partner label out of range");
    std::vector<int> containing;
    for (int i = 0; i < h.edge_count(); ++i)
        if (h.edge_mask(i) & (1u << (v - 1))) containing.push_back(i);
    if (containing.size() != 2)
        throw precondition_error("vertex must lie in exactly two triples");
    int t1 = containing[0], t2 = containing[1];  // edges are sorted, so t2 is lex-larger
    if (role) {
        if (*role == v || *role < 1 || *role > n)
            throw input_error("role label must be a vertex of the modified triple other than v");
        bool in1 = h.edge_mask(t1) & (1u << (*role - 1));
        bool in2 = h.edge_mask(t2) & (1u << (*role - 1));
        if (!in1 && !in2)
            throw input_error("role label lies in neither triple containing v");
        if (in1 && !in2) std::swap(t1, t2);
    }
    std::uint32_t both = h.edge_mask(t1) | h.edge_mask(t2);
    if (both & (1u << (a - 1)))
        throw precondition_error("partner label must avoid both triples containing v");

    std::vector<std::vector<int>> edges;
    for (int i = 0; i < h.edge_count(); ++i) {
        if (i == t2) continue;
        edges.push_back(h.edge(i));
    }
    std::vector<int> replaced;
    for (int w : h.edge(t2))
        if (w != v) replaced.push_back(w);
    replaced.push_back(n + 1);
    edges.push_back(std::move(replaced));
    edges.push_back({a, v, n + 1});
    Hypertree out = Hypertree::create(n + 1, std::move(edges));
    if (!validate(out).irreducible)
        throw internal_error("extension produced a non-irreducible hypertree");
    return out;
}

std::optional<BicoloredTriangulation> assemble_triangulation(const Hypertree& black,
                                                             const Hypertree& white) {
    if (black.n() != white.n())
        throw input_error("assembly requires hypertrees on the same ground set");
    if (!black.all_triples() || !white.all_triples())
        throw precondition_error("assembly requires all hyperedges of size 3");
    BicoloredTriangulation t =
        BicoloredTriangulation::create(black.n(), black.edges(), white.edges());
    if (!validate_triangulation(t).all()) return std::nullopt;
    return t;
}

} // namespace ht
