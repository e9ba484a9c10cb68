#include "ht/hypertree.hpp"

#include <algorithm>
#include <set>

namespace ht {

std::uint32_t label_set_mask(int n, const std::vector<int>& labels) {
    std::uint32_t m = 0;
    for (int v : labels) {
        if (v < 1 || v > n) throw input_error("label out of range: " + std::to_string(v));
        m |= 1u << (v - 1);
    }
    return m;
}

std::vector<int> mask_labels(std::uint32_t mask) {
    std::vector<int> out;
    while (mask) {
        out.push_back(__builtin_ctz(mask) + 1);
        mask &= mask - 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hypertree
// ---------------------------------------------------------------------------

Hypertree Hypertree::create(int n, std::vector<std::vector<int>> edges) {
    if (n < 0 || n > 31) throw input_error("vertex count out of supported range [0,31]");
    for (auto& e : edges) {
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw input_error("repeated label inside a hyperedge");
        if (e.size() < 3) throw input_error("hyperedge with fewer than 3 vertices");
        for (int v : e)
            if (v < 1 || v > n) throw input_error("hyperedge label out of range");
    }
    std::sort(edges.begin(), edges.end());
    Hypertree h;
    h.n_ = n;
    h.edges_ = std::move(edges);
    for (const auto& e : h.edges_) h.masks_.push_back(label_set_mask(n, e));
    for (std::size_t i = 0; i < h.masks_.size(); ++i)
        for (std::size_t j = 0; j < h.masks_.size(); ++j)
            if (i != j && (h.masks_[i] & h.masks_[j]) == h.masks_[i])
                throw input_error("hyperedge contained in another hyperedge");
    return h;
}

bool Hypertree::all_triples() const {
    for (const auto& e : edges_)
        if (e.size() != 3) return false;
    return true;
}

std::vector<int> valences(const Hypertree& h) {
    std::vector<int> val(h.n() + 1, 0);
    for (const auto& e : h.edges())
        for (int v : e) ++val[v];
    return val;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

ValidationReport validate(const Hypertree& h) {
    ValidationReport r;
    const int n = h.n();
    const int d = h.edge_count();
    if (d > 24) throw budget_error("too many hyperedges for exhaustive validation");

    r.has_min_size = true;
    for (const auto& e : h.edges())
        if (e.size() < 3) r.has_min_size = false;  // unreachable post-create; kept for clarity

    auto val = valences(h);
    r.covers_twice = true;
    for (int v = 1; v <= n; ++v) {
        if (val[v] < 2) {
            r.covers_twice = false;
            r.witness_labels.push_back(v);
        }
    }

    long weight = 0;
    for (const auto& e : h.edges()) weight += static_cast<long>(e.size()) - 2;
    r.normalization = (weight == n - 2);

    // Convexity over all nonempty sub-collections; track the minimal violating
    // (or, failing that, minimal strictness-violating) witness.
    r.convexity = true;
    r.irreducible = r.has_min_size && r.covers_twice && r.normalization;
    std::uint32_t convexity_witness = 0, equality_witness = 0;
    std::vector<std::uint32_t> subsets;
    subsets.reserve((1u << d) - 1);
    for (std::uint32_t s = 1; s < (1u << d); ++s) subsets.push_back(s);
    std::stable_sort(subsets.begin(), subsets.end(), [](std::uint32_t a, std::uint32_t b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        if (pa != pb) return pa < pb;
        return a < b;
    });
    for (std::uint32_t s : subsets) {
        std::uint32_t u = 0;
        int w = 0, count = 0;
        for (std::uint32_t rest = s; rest;) {
            int i = __builtin_ctz(rest);
            rest &= rest - 1;
            u |= h.edge_mask(i);
            w += static_cast<int>(h.edge(i).size()) - 2;
            ++count;
        }
        int slack = (__builtin_popcount(u) - 2) - w;
        if (slack < 0 && !convexity_witness) convexity_witness = s;
        if (slack <= 0 && count > 1 && count < d && !equality_witness) equality_witness = s;
    }
    if (convexity_witness) {
        r.convexity = false;
        r.irreducible = false;
    }
    if (equality_witness) r.irreducible = false;
    std::uint32_t w = convexity_witness ? convexity_witness
                                        : (r.irreducible ? 0 : equality_witness);
    for (std::uint32_t rest = w; rest;) {
        r.witness.push_back(__builtin_ctz(rest));
        rest &= rest - 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Subset collections, capacity, contraction, restriction
// ---------------------------------------------------------------------------

SubsetCollection SubsetCollection::create(std::vector<int> ground,
                                          std::vector<std::vector<int>> parts) {
    std::sort(ground.begin(), ground.end());
    if (std::adjacent_find(ground.begin(), ground.end()) != ground.end())
        throw input_error("repeated ground label");
    for (auto& p : parts) {
        std::sort(p.begin(), p.end());
        if (std::adjacent_find(p.begin(), p.end()) != p.end())
            throw input_error("repeated label inside a part");
        if (p.size() < 3) throw input_error("part with fewer than 3 elements");
        for (int v : p)
            if (!std::binary_search(ground.begin(), ground.end(), v))
                throw input_error("part label outside the ground set");
    }
    std::sort(parts.begin(), parts.end());
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
    return SubsetCollection{std::move(ground), std::move(parts)};
}

namespace {

struct CapacitySearch {
    std::vector<std::uint32_t> candidates;  // sorted by weight descending
    std::vector<int> weights;
    std::vector<int> suffix_weight;
    std::vector<std::uint32_t> chosen;
    int best = 0;
    int ground_size = 0;

    // Convexity check for every sub-family containing the newcomer.
    bool keeps_convexity(std::uint32_t g, int w) const {
        const int k = static_cast<int>(chosen.size());
        for (std::uint32_t s = 0; s < (1u << k); ++s) {
            std::uint32_t u = g;
            int total = w;
            for (std::uint32_t rest = s; rest;) {
                int i = __builtin_ctz(rest);
                rest &= rest - 1;
                u |= chosen[i];
                total += __builtin_popcount(chosen[i]) - 2;
            }
            if (__builtin_popcount(u) - 2 < total) return false;
        }
        return true;
    }

    void run(std::size_t idx, int current) {
        best = std::max(best, current);
        if (best >= ground_size - 2) return;  // absolute maximum reached
        if (idx >= candidates.size()) return;
        if (current + suffix_weight[idx] <= best) return;
        // Include candidates[idx] if convexity survives.
        if (keeps_convexity(candidates[idx], weights[idx])) {
            chosen.push_back(candidates[idx]);
            run(idx + 1, current + weights[idx]);
            chosen.pop_back();
        }
        run(idx + 1, current);
    }
};

}  // namespace

int capacity(const SubsetCollection& c) {
    const int g = static_cast<int>(c.ground.size());
    if (g > 31) throw budget_error("ground set too large for capacity search");
    // Candidate pool: distinct subsets of size >= 3 of any part.
    std::set<std::uint32_t> pool;
    for (const auto& p : c.parts) {
        if (p.size() > 24) throw budget_error("part too large for capacity search");
        std::uint32_t pm = 0;
        for (int v : p) {
            int idx = static_cast<int>(std::lower_bound(c.ground.begin(), c.ground.end(), v) -
                                       c.ground.begin());
            pm |= 1u << idx;
        }
        // All subsets of pm with >= 3 bits.
        for (std::uint32_t s = pm;; s = (s - 1) & pm) {
            if (__builtin_popcount(s) >= 3) pool.insert(s);
            if (s == 0) break;
        }
    }
    CapacitySearch search;
    search.ground_size = g;
    for (std::uint32_t s : pool) {
        search.candidates.push_back(s);
        search.weights.push_back(__builtin_popcount(s) - 2);
    }
    // Heaviest first tightens the branch-and-bound bound early.
    std::vector<std::size_t> order(search.candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return search.weights[a] > search.weights[b];
    });
    std::vector<std::uint32_t> cand;
    std::vector<int> wts;
    for (std::size_t i : order) {
        cand.push_back(search.candidates[i]);
        wts.push_back(search.weights[i]);
    }
    search.candidates = std::move(cand);
    search.weights = std::move(wts);
    search.suffix_weight.assign(search.candidates.size() + 1, 0);
    for (int i = static_cast<int>(search.candidates.size()) - 1; i >= 0; --i)
        search.suffix_weight[i] = search.suffix_weight[i + 1] + search.weights[i];
    search.run(0, 0);
    return search.best;
}

SubsetCollection contract(const Hypertree& h, const std::vector<int>& I) {
    if (I.empty()) throw input_error("contraction requires a nonempty label set");
    std::uint32_t imask = label_set_mask(h.n(), I);
    bool point_used = false;
    std::vector<std::vector<int>> parts;
    for (int i = 0; i < h.edge_count(); ++i) {
        std::uint32_t kept = h.edge_mask(i) & imask;
        bool collapsed = (h.edge_mask(i) & ~imask) != 0;
        int size = __builtin_popcount(kept) + (collapsed ? 1 : 0);
        if (size < 3) continue;
        std::vector<int> part = mask_labels(kept);
        if (collapsed) {
            part.insert(part.begin(), 0);
            point_used = true;
        }
        parts.push_back(std::move(part));
    }
    std::vector<int> ground = mask_labels(imask);
    if (point_used) ground.insert(ground.begin(), 0);
    return SubsetCollection::create(std::move(ground), std::move(parts));
}

SubsetCollection restrict_away(const Hypertree& h, const std::vector<int>& I) {
    std::uint32_t imask = label_set_mask(h.n(), I);
    std::uint32_t cmask = ((h.n() == 31 ? 0x7fffffffu : ((1u << h.n()) - 1))) & ~imask;
    std::vector<std::vector<int>> parts;
    for (int i = 0; i < h.edge_count(); ++i) {
        std::uint32_t kept = h.edge_mask(i) & cmask;
        if (__builtin_popcount(kept) >= 3) parts.push_back(mask_labels(kept));
    }
    return SubsetCollection::create(mask_labels(cmask), std::move(parts));
}

int restricted_capacity(const Hypertree& h, const std::vector<int>& I) {
    std::uint32_t imask = label_set_mask(h.n(), I);
    int total = 0;
    for (int i = 0; i < h.edge_count(); ++i) {
        int size = __builtin_popcount(h.edge_mask(i) & ~imask);
        if (size >= 3) total += size - 2;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Wheels, genericity, boundary contraction
// ---------------------------------------------------------------------------

std::vector<std::vector<int>> wheels(const Hypertree& h) {
    const int n = h.n();
    // pair_in_edge[i][j]: some hyperedge contains both i and j.
    std::vector<std::vector<bool>> pair_in(n + 1, std::vector<bool>(n + 1, false));
    for (const auto& e : h.edges())
        for (std::size_t a = 0; a < e.size(); ++a)
            for (std::size_t b = a + 1; b < e.size(); ++b)
                pair_in[e[a]][e[b]] = pair_in[e[b]][e[a]] = true;
    std::vector<std::vector<int>> out;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            if (!pair_in[i][j]) continue;
            for (int k = j + 1; k <= n; ++k) {
                if (!pair_in[i][k] || !pair_in[j][k]) continue;
                std::uint32_t t = (1u << (i - 1)) | (1u << (j - 1)) | (1u << (k - 1));
                bool inside = false;
                for (int e = 0; e < h.edge_count() && !inside; ++e)
                    if ((h.edge_mask(e) & t) == t) inside = true;
                if (!inside) out.push_back({i, j, k});
            }
        }
    return out;
}

bool is_generic(const Hypertree& h) {
    if (!h.all_triples())
        throw precondition_error("genericity test supports only hyperedges of size 3");
    if (!validate(h).irreducible)
        throw precondition_error("genericity test requires an irreducible hypertree");
    const int n = h.n();
    auto wh = wheels(h);
    std::set<std::vector<int>> wheel_set(wh.begin(), wh.end());
    std::set<std::vector<int>> edge_set(h.edges().begin(), h.edges().end());
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                std::vector<int> t{i, j, k};
                if (edge_set.count(t) || wheel_set.count(t)) continue;
                std::vector<int> keep;
                for (int v = 1; v <= n; ++v)
                    if (v != i && v != j && v != k) keep.push_back(v);
                if (capacity(contract(h, keep)) != n - 4) return false;
            }
    return true;
}

bool is_boundary_contracted(const Hypertree& h, const std::vector<int>& I) {
    const int n = h.n();
    std::uint32_t imask = label_set_mask(n, I);
    int isize = __builtin_popcount(imask);
    if (isize < 1 || isize > n - 2)
        throw precondition_error("boundary index must satisfy 1 <= |I| <= n-2");
    std::uint32_t cmask = ((n == 31 ? 0x7fffffffu : ((1u << n) - 1))) & ~imask;
    if (__builtin_popcount(cmask) == 2) return false;
    for (int i = 0; i < h.edge_count(); ++i)
        if ((h.edge_mask(i) & cmask) == cmask) return false;
    return true;
}

} // namespace ht
