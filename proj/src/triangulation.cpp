#include "ht/triangulation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace ht {

namespace {

using Pair = std::pair<int, int>;

std::vector<Pair> face_edges(const std::vector<int>& f) {
    return {{f[0], f[1]}, {f[0], f[2]}, {f[1], f[2]}};
}

}  // namespace

BicoloredTriangulation BicoloredTriangulation::create(int n,
                                                      std::vector<std::vector<int>> black,
                                                      std::vector<std::vector<int>> white) {
    if (n < 0 || n > 31) throw input_error("vertex count out of supported range [0,31]");
    auto norm = [&](std::vector<std::vector<int>>& faces) {
        for (auto& f : faces) {
            std::sort(f.begin(), f.end());
            if (f.size() != 3 || f[0] == f[1] || f[1] == f[2])
                throw input_error("triangulation face must have 3 distinct vertices");
            for (int v : f)
                if (v < 1 || v > n) throw input_error("face label out of range");
        }
        std::sort(faces.begin(), faces.end());
        if (std::adjacent_find(faces.begin(), faces.end()) != faces.end())
            throw input_error("repeated face of one color");
    };
    norm(black);
    norm(white);
    return BicoloredTriangulation{n, std::move(black), std::move(white)};
}

TriangulationReport validate_triangulation(const BicoloredTriangulation& t) {
    TriangulationReport r;
    // Edge -> (black count, white count).
    std::map<Pair, std::pair<int, int>> edges;
    for (const auto& f : t.black)
        for (const auto& e : face_edges(f)) edges[e].first++;
    for (const auto& f : t.white)
        for (const auto& e : face_edges(f)) edges[e].second++;

    r.edge_bicolored = true;
    for (const auto& [e, counts] : edges) {
        if (counts.first != 1 || counts.second != 1) {
            r.edge_bicolored = false;
            if (r.witness_edge.empty()) r.witness_edge = {e.first, e.second};
        }
    }

    // Vertex links: faces around each vertex joined by shared edges through
    // it must form one cycle (every incident face with exactly two link
    // neighbours, all incident faces connected).  Colors alternate
    // automatically when evenness holds, since only opposite colors share an
    // edge.
    r.links_single_cycles = true;
    std::vector<std::vector<std::pair<bool, int>>> incident(t.n + 1);  // (is_black, face idx)
    for (std::size_t i = 0; i < t.black.size(); ++i)
        for (int v : t.black[i]) incident[v].emplace_back(true, static_cast<int>(i));
    for (std::size_t i = 0; i < t.white.size(); ++i)
        for (int v : t.white[i]) incident[v].emplace_back(false, static_cast<int>(i));
    for (int v = 1; v <= t.n && r.links_single_cycles; ++v) {
        const auto& inc = incident[v];
        if (inc.empty()) {
            r.links_single_cycles = false;  // isolated labels cannot sit on a sphere
            r.witness_vertex = v;
            break;
        }
        const int m = static_cast<int>(inc.size());
        std::vector<std::vector<int>> adj(m);
        for (int i = 0; i < m; ++i) {
            const auto& fi = inc[i].first ? t.black[inc[i].second] : t.white[inc[i].second];
            for (int j = i + 1; j < m; ++j) {
                if (inc[i].first == inc[j].first) continue;
                const auto& fj = inc[j].first ? t.black[inc[j].second] : t.white[inc[j].second];
                // Shared edge through v?
                int common = 0;
                bool has_v = false;
                for (int a : fi)
                    for (int b : fj)
                        if (a == b) {
                            ++common;
                            if (a == v) has_v = true;
                        }
                if (common >= 2 && has_v) {
                    adj[i].push_back(j);
                    adj[j].push_back(i);
                }
            }
        }
        bool ok = true;
        for (int i = 0; i < m; ++i)
            if (adj[i].size() != 2) ok = false;
        if (ok) {
            std::vector<bool> seen(m, false);
            std::vector<int> stack{0};
            seen[0] = true;
            int cnt = 1;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (int y : adj[x])
                    if (!seen[y]) {
                        seen[y] = true;
                        ++cnt;
                        stack.push_back(y);
                    }
            }
            ok = (cnt == m);
        }
        if (!ok) {
            r.links_single_cycles = false;
            r.witness_vertex = v;
        }
    }

    const long e = 3 * static_cast<long>(t.black.size());
    const long f = static_cast<long>(t.black.size()) + static_cast<long>(t.white.size());
    r.euler = (t.n - e + f == 2);
    r.face_count = (static_cast<int>(t.black.size()) == t.n - 2 &&
                    static_cast<int>(t.white.size()) == t.n - 2);
    return r;
}

std::pair<Hypertree, Hypertree> black_white_hypertrees(const BicoloredTriangulation& t) {
    if (!validate_triangulation(t).all())
        throw input_error("not a valid bicolored sphere triangulation");
    return {Hypertree::create(t.n, t.black), Hypertree::create(t.n, t.white)};
}

std::vector<int> region_boundary_sizes(const BicoloredTriangulation& t,
                                       const std::vector<int>& black_subset) {
    if (!validate_triangulation(t).all())
        throw input_error("not a valid bicolored sphere triangulation");
    std::set<int> chosen(black_subset.begin(), black_subset.end());
    for (int i : black_subset)
        if (i < 0 || i >= static_cast<int>(t.black.size()))
            throw input_error("black face index out of range");

    // Faces of the complement: all white faces plus unchosen black faces.
    // Two complement faces are joined when they share an edge (every edge
    // joins a black and a white face, and the edge stays interior to the
    // complement exactly when its black face is unchosen).
    struct FaceRef {
        bool black;
        int idx;
    };
    std::vector<FaceRef> comp;
    std::map<std::pair<bool, int>, int> comp_index;
    for (std::size_t i = 0; i < t.black.size(); ++i)
        if (!chosen.count(static_cast<int>(i))) {
            comp_index[{true, static_cast<int>(i)}] = static_cast<int>(comp.size());
            comp.push_back({true, static_cast<int>(i)});
        }
    for (std::size_t i = 0; i < t.white.size(); ++i) {
        comp_index[{false, static_cast<int>(i)}] = static_cast<int>(comp.size());
        comp.push_back({false, static_cast<int>(i)});
    }
    // Edge -> (black face, white face).
    std::map<Pair, std::pair<int, int>> owner;
    for (std::size_t i = 0; i < t.black.size(); ++i)
        for (const auto& e : face_edges(t.black[i])) owner[e].first = static_cast<int>(i);
    for (std::size_t i = 0; i < t.white.size(); ++i)
        for (const auto& e : face_edges(t.white[i])) owner[e].second = static_cast<int>(i);

    // Union-find over complement faces.
    std::vector<int> parent(comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [e, fs] : owner) {
        if (chosen.count(fs.first)) continue;  // boundary edge
        int a = comp_index.at({true, fs.first});
        int b = comp_index.at({false, fs.second});
        parent[find(a)] = find(b);
    }
    // One count per component (a boundaryless component — the whole sphere
    // when nothing is chosen — reports 0).  Boundary edges attach to the
    // complement component of their white face.
    std::map<int, int> counts;
    for (std::size_t i = 0; i < comp.size(); ++i) counts[find(static_cast<int>(i))];
    for (const auto& [e, fs] : owner) {
        if (!chosen.count(fs.first)) continue;
        int comp_id = find(comp_index.at({false, fs.second}));
        counts[comp_id]++;
    }
    std::vector<int> out;
    for (const auto& [id, c] : counts) out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace ht
