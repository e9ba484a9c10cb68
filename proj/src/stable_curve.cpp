#include "ht/stable_curve.hpp"

#include <cstdlib>

namespace ht {

bool StableCurveGraph::connected() const {
    const int c = static_cast<int>(components.size());
    if (c == 0) return true;
    std::vector<std::vector<int>> adj(c);
    for (const auto& [a, b] : nodes) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> seen(c, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
    }
    return count == c;
}

StableCurveGraph stable_model(const Hypertree& h) {
    auto val = valences(h);
    for (int v = 1; v <= h.n(); ++v)
        if (val[v] < 2)
            throw precondition_error("dual graph requires every vertex in >= 2 hyperedges");
    StableCurveGraph g;
    g.black_count = h.edge_count();
    for (int i = 0; i < h.edge_count(); ++i)
        g.components.push_back({true, i, static_cast<int>(h.edge(i).size()) - 2});
    // White components for vertices of valence > 2, in label order.
    std::vector<int> white_index(h.n() + 1, -1);
    for (int v = 1; v <= h.n(); ++v) {
        if (val[v] > 2) {
            white_index[v] = static_cast<int>(g.components.size());
            g.components.push_back({false, v, val[v] - 2});
        }
    }
    for (int v = 1; v <= h.n(); ++v) {
        std::vector<int> incident;
        for (int i = 0; i < h.edge_count(); ++i)
            if (h.edge_mask(i) & (1u << (v - 1))) incident.push_back(i);
        if (val[v] == 2) {
            g.nodes.emplace_back(incident[0], incident[1]);
        } else {
            for (int i : incident) g.nodes.emplace_back(white_index[v], i);
        }
    }
    return g;
}

std::vector<int> canonical_multidegree(const StableCurveGraph& g) {
    std::vector<int> b(g.components.size(), 0);
    for (std::size_t i = 0; i < g.components.size(); ++i)
        if (g.components[i].black) b[i] = 1;
    return b;
}

bool gieseker_stable(const StableCurveGraph& g, const std::vector<int>& multidegree) {
    const int c = static_cast<int>(g.components.size());
    if (multidegree.size() != g.components.size())
        throw input_error("multidegree size does not match the component count");
    const long d = g.black_count;
    if (d <= 2)
        throw precondition_error("stability test requires at least 3 black components");
    if (c > 24) throw budget_error("too many components for exhaustive subcurve scan");
    // The inequality is symmetric in Y <-> complement, so fix component 0 in Y.
    const std::uint32_t full = (c == 32 ? ~0u : ((1u << c) - 1));
    for (std::uint32_t s = 1; s <= full; s += 2) {
        if (s == full) continue;
        long b = 0, m = 0;
        for (std::uint32_t rest = s; rest;) {
            int i = __builtin_ctz(rest);
            rest &= rest - 1;
            b += multidegree[i];
            m += g.components[i].dualizing_degree;
        }
        long crossing = 0;
        for (const auto& [x, y] : g.nodes) {
            bool in_x = (s >> x) & 1, in_y = (s >> y) & 1;
            if (in_x != in_y) ++crossing;
        }
        long lhs = std::labs((2 * d - 4) * b - d * m);
        if (lhs >= (d - 2) * crossing) return false;
    }
    return true;
}

} // namespace ht
