#include "ht/canonical.hpp"

#include <algorithm>
#include <sstream>

namespace ht {

namespace {

// Partial relabeling: sigma[v] is the canonical label of original vertex v,
// or 0 while unassigned.  `used_edges` marks edges already placed in the
// canonical sequence, `used_canon` the canonical labels already taken.
struct State {
    std::vector<int> sigma;
    std::uint32_t used_edges = 0;
    std::uint32_t used_canon = 0;
};

// Smallest canonical labels not yet used, `count` of them, ascending.
std::vector<int> fresh_labels(std::uint32_t used_canon, int count) {
    std::vector<int> out;
    for (int v = 1; count > 0; ++v) {
        if (!(used_canon & (1u << (v - 1)))) {
            out.push_back(v);
            --count;
        }
    }
    return out;
}

// Minimal tuple edge `e` can take under the state's partial relabeling:
// assigned vertices keep their images, unassigned ones take the smallest
// unused canonical labels.
std::vector<int> minimal_tuple(const State& st, const std::vector<int>& e) {
    std::vector<int> tuple;
    int unassigned = 0;
    for (int v : e) {
        if (st.sigma[v]) tuple.push_back(st.sigma[v]);
        else ++unassigned;
    }
    auto fresh = fresh_labels(st.used_canon, unassigned);
    tuple.insert(tuple.end(), fresh.begin(), fresh.end());
    std::sort(tuple.begin(), tuple.end());
    return tuple;
}

// One pass of the position-by-position minimization.  When `target` is
// non-null the pass compares each position's minimum against *target and
// reports whether the target sequence is exactly the minimum (early false on
// the first position where a smaller tuple exists).  Otherwise it builds the
// canonical sequence and the complete list of minimizing assignments.
struct Minimizer {
    const Hypertree& h;
    std::vector<std::vector<int>> canonical_edges;
    std::vector<State> states;

    explicit Minimizer(const Hypertree& h_) : h(h_) {
        states.push_back(State{std::vector<int>(h.n() + 1, 0), 0, 0});
    }

    // Advance one position.  Returns the minimal tuple.
    std::vector<int> step() {
        const int d = h.edge_count();
        std::vector<int> best;
        std::vector<std::pair<std::size_t, int>> argmin;  // (state index, edge)
        for (std::size_t si = 0; si < states.size(); ++si) {
            for (int e = 0; e < d; ++e) {
                if (states[si].used_edges & (1u << e)) continue;
                auto t = minimal_tuple(states[si], h.edge(e));
                if (best.empty() || t < best) {
                    best = t;
                    argmin.clear();
                }
                if (t == best) argmin.emplace_back(si, e);
            }
        }
        // Expand every minimizing (state, edge) pair over all ways to assign
        // the edge's unassigned vertices to the fresh label block.
        std::vector<State> next;
        for (const auto& [si, e] : argmin) {
            const State& st = states[si];
            std::vector<int> unassigned;
            for (int v : h.edge(e))
                if (!st.sigma[v]) unassigned.push_back(v);
            auto fresh = fresh_labels(st.used_canon, static_cast<int>(unassigned.size()));
            std::vector<int> perm = fresh;
            std::sort(perm.begin(), perm.end());
            do {
                State ns = st;
                ns.used_edges |= 1u << e;
                for (std::size_t i = 0; i < unassigned.size(); ++i) {
                    ns.sigma[unassigned[i]] = perm[i];
                    ns.used_canon |= 1u << (perm[i] - 1);
                }
                next.push_back(std::move(ns));
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        states = std::move(next);
        canonical_edges.push_back(best);
        return best;
    }
};

}  // namespace

CanonicalHypertree canonical_form(const Hypertree& h) {
    Minimizer m(h);
    for (int t = 0; t < h.edge_count(); ++t) m.step();
    CanonicalHypertree out;
    out.hypertree = Hypertree::create(h.n(), m.canonical_edges);
    // Vertices covered by no hyperedge permute freely among the leftover
    // canonical labels.
    int covered = 0;
    if (!m.states.empty()) covered = __builtin_popcount(m.states.front().used_canon);
    std::uint64_t aut = m.states.size();
    for (int k = 2; k <= h.n() - covered; ++k) aut *= k;
    out.automorphism_order = aut;
    return out;
}

bool is_canonically_labeled(const Hypertree& h) {
    Minimizer m(h);
    for (int t = 0; t < h.edge_count(); ++t) {
        auto best = m.step();
        if (best != h.edge(t)) {
            if (h.edge(t) < best)
                throw internal_error("canonical minimization produced a non-minimal tuple");
            return false;
        }
    }
    return true;
}

std::string certificate(const Hypertree& h) {
    auto canon = canonical_form(h);
    std::ostringstream out;
    out << "HT1:" << h.n() << ":";
    for (int i = 0; i < canon.hypertree.edge_count(); ++i) {
        if (i) out << "|";
        const auto& e = canon.hypertree.edge(i);
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (j) out << ",";
            out << e[j];
        }
    }
    return out.str();
}

bool is_isomorphic(const Hypertree& a, const Hypertree& b) {
    if (a.n() != b.n())
        throw input_error("isomorphism test requires equal vertex counts");
    return certificate(a) == certificate(b);
}

} // namespace ht
