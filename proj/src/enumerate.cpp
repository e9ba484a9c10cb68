#include "ht/enumerate.hpp"

#include <algorithm>

namespace ht {

namespace {

struct Candidate {
    std::vector<int> labels;
    std::uint32_t mask;
    int weight;  // |e| - 2
    int first;   // smallest label
};

struct Search {
    int n;
    std::vector<Candidate> pool;
    std::vector<int> chosen;          // indices into pool, increasing
    std::vector<std::uint32_t> chosen_masks;
    std::vector<int> chosen_weights;
    std::vector<int> valence;         // 1-based
    int used_weight = 0;
    std::vector<CanonicalHypertree> found;

    // Strict convexity for every sub-family containing the newcomer (size >=
    // 2).  When the newcomer completes the weight budget the full family is
    // exempt from strictness (its inequality closes to equality there).
    bool convexity_ok(std::uint32_t mask, int weight, bool final_edge) const {
        const int k = static_cast<int>(chosen_masks.size());
        for (std::uint32_t s = 1; s < (1u << k); ++s) {
            std::uint32_t u = mask;
            int w = weight;
            for (std::uint32_t rest = s; rest;) {
                int i = __builtin_ctz(rest);
                rest &= rest - 1;
                u |= chosen_masks[i];
                w += chosen_weights[i];
            }
            int slack = (__builtin_popcount(u) - 2) - w;
            bool full_family = final_edge && s == (1u << k) - 1;
            if (full_family ? slack < 0 : slack <= 0) return false;
        }
        return true;
    }

    Hypertree current_hypertree(const Candidate& extra) const {
        std::vector<std::vector<int>> edges;
        for (int i : chosen) edges.push_back(pool[i].labels);
        edges.push_back(extra.labels);
        return Hypertree::create(n, std::move(edges));
    }

    void dfs(int from) {
        const int remaining = (n - 2) - used_weight;
        for (std::size_t ci = from; ci < pool.size(); ++ci) {
            const Candidate& c = pool[ci];
            if (c.weight > remaining) continue;
            // Labels below the newcomer's first label can never gain valence
            // from later (lexicographically larger) edges.
            bool frozen_short = false;
            for (int v = 1; v < c.first && !frozen_short; ++v)
                if (valence[v] < 2) frozen_short = true;
            if (frozen_short) continue;
            bool pairwise = true;
            for (std::uint32_t m : chosen_masks)
                if (__builtin_popcount(m & c.mask) > 1) { pairwise = false; break; }
            if (!pairwise) continue;
            const bool final_edge = (c.weight == remaining);
            if (!convexity_ok(c.mask, c.weight, final_edge)) continue;
            // Coverage deficit must be repairable: an edge of weight w covers
            // at most w + 2 <= 3w vertex slots.
            int deficit = 0;
            for (int v = 1; v <= n; ++v) {
                int val = valence[v] + ((c.mask >> (v - 1)) & 1);
                if (val < 2) deficit += 2 - val;
            }
            if (deficit > 3 * (remaining - c.weight)) continue;
            Hypertree h = current_hypertree(c);
            if (!is_canonically_labeled(h)) continue;
            if (final_edge) {
                ValidationReport r = validate(h);
                if (r.all()) {
                    CanonicalHypertree ch = canonical_form(h);
                    if (ch.hypertree != h)
                        throw internal_error("accepted hypertree is not its own canonical form");
                    found.push_back(std::move(ch));
                }
                continue;
            }
            chosen.push_back(static_cast<int>(ci));
            chosen_masks.push_back(c.mask);
            chosen_weights.push_back(c.weight);
            for (int v : c.labels) ++valence[v];
            used_weight += c.weight;
            dfs(static_cast<int>(ci) + 1);
            used_weight -= c.weight;
            for (int v : c.labels) --valence[v];
            chosen_weights.pop_back();
            chosen_masks.pop_back();
            chosen.pop_back();
        }
    }
};

}  // namespace

std::vector<CanonicalHypertree> enumerate_irreducible(int n) {
    if (n < 4 || n > 12)
        throw input_error("enumeration supports 4 <= n <= 12");
    Search s;
    s.n = n;
    s.valence.assign(n + 1, 0);
    // All label subsets of size >= 3, ordered by their ascending tuples.
    for (std::uint32_t m = 1; m < (1u << n); ++m) {
        if (__builtin_popcount(m) < 3) continue;
        Candidate c;
        c.mask = m;
        c.labels = mask_labels(m);
        c.weight = static_cast<int>(c.labels.size()) - 2;
        c.first = c.labels.front();
        s.pool.push_back(std::move(c));
    }
    std::sort(s.pool.begin(), s.pool.end(),
              [](const Candidate& a, const Candidate& b) { return a.labels < b.labels; });
    s.dfs(0);
    return std::move(s.found);
}

} // namespace ht
