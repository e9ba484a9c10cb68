#include "ht/divisor.hpp"

#include <algorithm>
#include <set>

#include "ht/constructions.hpp"

namespace ht {

// ---------------------------------------------------------------------------
// Incidence matrices
// ---------------------------------------------------------------------------

namespace {

void check_ctx(const Hypertree& h, const VarContext& ctx) {
    if (ctx.size() < h.n())
        throw input_error("variable context smaller than the vertex count");
}

// Row asserting collinearity of the three points indexed by i<j<k: the
// kernel condition (x_j - x_k) y_i + (x_k - x_i) y_j + (x_i - x_j) y_k = 0.
void fill_collinearity_row(PolyMatrix& m, int row, int i, int j, int k,
                           const VarContext& ctx) {
    m.at(row, i - 1) = linear_difference(ctx, j - 1, k - 1);
    m.at(row, j - 1) = linear_difference(ctx, k - 1, i - 1);
    m.at(row, k - 1) = linear_difference(ctx, i - 1, j - 1);
}

}  // namespace

PolyMatrix matrix_A(const Hypertree& h, const VarContext& ctx) {
    if (!h.all_triples())
        throw precondition_error("matrix_A requires all hyperedges of size 3");
    check_ctx(h, ctx);
    PolyMatrix m(ctx, h.edge_count(), h.n());
    for (int r = 0; r < h.edge_count(); ++r) {
        const auto& e = h.edge(r);
        fill_collinearity_row(m, r, e[0], e[1], e[2], ctx);
    }
    return m;
}

PolyMatrix collinearity_matrix(const Hypertree& h, const VarContext& ctx) {
    check_ctx(h, ctx);
    int rows = 0;
    for (const auto& e : h.edges()) rows += static_cast<int>(e.size()) - 2;
    PolyMatrix m(ctx, rows, h.n());
    int r = 0;
    for (const auto& e : h.edges())
        for (std::size_t t = 0; t + 2 < e.size(); ++t)
            fill_collinearity_row(m, r++, e[t], e[t + 1], e[t + 2], ctx);
    return m;
}

Poly hypertree_equation(const Hypertree& h) {
    if (!h.all_triples())
        throw precondition_error("hypertree equation requires all hyperedges of size 3");
    if (!validate(h).irreducible)
        throw precondition_error("hypertree equation requires an irreducible hypertree");
    VarContext ctx = VarContext::xs(h.n());
    PolyMatrix a = matrix_A(h, ctx);
    std::vector<int> rows, cols;
    for (int r = 1; r < a.rows(); ++r) rows.push_back(r);
    const auto& dropped = h.edge(0);
    for (int c = 0; c < a.cols(); ++c)
        if (c + 1 != dropped[0] && c + 1 != dropped[1] && c + 1 != dropped[2])
            cols.push_back(c);
    Poly det = determinant(a.submatrix(rows, cols));
    if (det.is_zero())
        throw internal_error("hypertree equation minor is singular");
    return det.canonicalized();
}

PolyMatrix matrix_B(const BicoloredTriangulation& t, FaceColor color,
                    const VarContext& ctx) {
    if (!validate_triangulation(t).all())
        throw input_error("not a valid bicolored sphere triangulation");
    if (ctx.size() < t.n)
        throw input_error("variable context smaller than the vertex count");
    // Orient all faces consistently: each face is (a,b,c) or (a,c,b) for its
    // sorted vertices a<b<c; adjacent faces must traverse their shared edge
    // in opposite directions.  Parities propagate from the first black face.
    struct Face {
        const std::vector<int>* v;
        bool black;
        int idx;        // index within its color list
        int parity = -1;  // 0: (a,b,c), 1: (a,c,b); -1: unset
    };
    std::vector<Face> faces;
    for (std::size_t i = 0; i < t.black.size(); ++i)
        faces.push_back({&t.black[i], true, static_cast<int>(i)});
    for (std::size_t i = 0; i < t.white.size(); ++i)
        faces.push_back({&t.white[i], false, static_cast<int>(i)});
    auto directed_edges = [](const Face& f) {
        const auto& v = *f.v;
        std::vector<std::pair<int, int>> e;
        if (f.parity == 0) e = {{v[0], v[1]}, {v[1], v[2]}, {v[2], v[0]}};
        else e = {{v[0], v[2]}, {v[2], v[1]}, {v[1], v[0]}};
        return e;
    };
    // Edge -> list of face indices.
    std::map<std::pair<int, int>, std::vector<int>> edge_faces;
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const auto& v = *faces[f].v;
        edge_faces[{v[0], v[1]}].push_back(static_cast<int>(f));
        edge_faces[{v[0], v[2]}].push_back(static_cast<int>(f));
        edge_faces[{v[1], v[2]}].push_back(static_cast<int>(f));
    }
    faces[0].parity = 0;
    std::vector<int> queue{0};
    while (!queue.empty()) {
        int f = queue.back();
        queue.pop_back();
        for (auto [x, y] : directed_edges(faces[f])) {
            auto key = std::minmax(x, y);
            for (int g : edge_faces[{key.first, key.second}]) {
                if (g == f) continue;
                // g must traverse the edge as y -> x; find the parity doing so.
                int needed = -1;
                for (int par = 0; par < 2 && needed < 0; ++par) {
                    Face probe = faces[g];
                    probe.parity = par;
                    for (auto [u, w] : directed_edges(probe))
                        if (u == y && w == x) needed = par;
                }
                if (needed < 0) throw internal_error("face orientation propagation failed");
                if (faces[g].parity == -1) {
                    faces[g].parity = needed;
                    queue.push_back(g);
                } else if (faces[g].parity != needed) {
                    throw internal_error("triangulation is not orientable");
                }
            }
        }
    }
    for (const auto& f : faces)
        if (f.parity == -1) throw internal_error("triangulation face adjacency is disconnected");

    const bool cols_black = (color == FaceColor::black);
    const auto& col_list = cols_black ? t.black : t.white;
    const auto& row_list = cols_black ? t.white : t.black;
    // face index lookup by (color, idx)
    auto face_at = [&](bool black, int idx) -> const Face& {
        return faces[black ? idx : static_cast<int>(t.black.size()) + idx];
    };
    PolyMatrix m(ctx, static_cast<int>(row_list.size()), static_cast<int>(col_list.size()));
    for (int c = 0; c < static_cast<int>(col_list.size()); ++c) {
        const Face& cf = face_at(cols_black, c);
        for (auto [x, y] : directed_edges(cf)) {
            auto key = std::minmax(x, y);
            for (int g : edge_faces[{key.first, key.second}]) {
                const Face& other = faces[g];
                if (other.black == cols_black) continue;
                // Entry x_x - x_y oriented by the column face.
                m.at(other.idx, c) = linear_difference(ctx, x - 1, y - 1);
            }
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Kapranov class of the hypertree divisor
// ---------------------------------------------------------------------------

KapranovClass class_coefficients(const Hypertree& h) {
    if (!validate(h).irreducible)
        throw precondition_error("class coefficients require an irreducible hypertree");
    const int n = h.n();
    const long d = h.edge_count();
    auto val = valences(h);
    auto wh = wheels(h);
    std::set<std::uint32_t> wheel_masks;
    for (const auto& w : wh) wheel_masks.insert(label_set_mask(n, w));

    KapranovClass out;
    out.n = n + 1;
    out.marking = n + 1;
    out.d = d - 1;

    const std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t jmask = 1; jmask < full; ++jmask) {
        const int jsize = __builtin_popcount(jmask);
        if (jsize < 1 || jsize > n - 3) continue;
        std::vector<int> J = mask_labels(jmask);
        const std::uint32_t cmask = full & ~jmask;

        // Lower bound |J| - 1 + #(hyperedges in J's complement) - capacity.
        int inside_complement = 0;
        for (int e = 0; e < h.edge_count(); ++e)
            if ((h.edge_mask(e) & cmask) == h.edge_mask(e)) ++inside_complement;
        const int cap = capacity(contract(h, J));
        long bound = jsize - 1 + inside_complement - cap;

        std::vector<long> exact_values;
        // J inside a hyperedge (properly or fully).
        for (int e = 0; e < h.edge_count(); ++e) {
            const std::uint32_t em = h.edge_mask(e);
            if ((jmask & em) != jmask) continue;
            long sumval = 0;
            for (int v : J) sumval += val[v];
            if (jmask == em)
                exact_values.push_back(d + jsize - sumval);  // full hyperedge
            else
                exact_values.push_back(d + jsize - 1 - sumval);
        }
        // Complement of a hyperedge, or of a proper sub-edge set of size >= 3.
        for (int e = 0; e < h.edge_count(); ++e) {
            const std::uint32_t em = h.edge_mask(e);
            if (cmask == em) exact_values.push_back(1);
            else if ((cmask & em) == cmask && __builtin_popcount(cmask) >= 3)
                exact_values.push_back(0);
        }
        // Complement is a triple that is neither hyperedge nor wheel, with
        // full contraction capacity: the bound is attained (and equals 0).
        if (jsize == n - 3 && __builtin_popcount(cmask) == 3) {
            bool is_edge = false;
            for (int e = 0; e < h.edge_count(); ++e)
                if (h.edge_mask(e) == cmask) is_edge = true;
            if (!is_edge && !wheel_masks.count(cmask) && cap == n - 4)
                exact_values.push_back(bound);
        }

        ClassEntry entry;
        if (!exact_values.empty()) {
            for (long v : exact_values)
                if (v != exact_values.front())
                    throw internal_error("conflicting exact coefficient rules");
            entry.kind = ClassEntry::Kind::exact;
            entry.value = exact_values.front();
        } else {
            entry.kind = ClassEntry::Kind::lower_bound;
            entry.value = bound;
        }
        out.m.emplace(std::move(J), entry);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Divisor comparison
// ---------------------------------------------------------------------------

SameDivisorVerdict same_divisor(const Hypertree& a, const Hypertree& b) {
    if (a.n() != b.n())
        throw input_error("divisor comparison requires equal vertex counts");
    if (!validate(a).irreducible || !validate(b).irreducible)
        throw precondition_error("divisor comparison requires irreducible hypertrees");

    SameDivisorVerdict verdict;
    if (a == b) {
        verdict = SameDivisorVerdict::equal_identical;
    } else if (a.all_triples() && b.all_triples() && assemble_triangulation(a, b)) {
        verdict = SameDivisorVerdict::equal_spherical;
    } else if (a.all_triples() && b.all_triples() && is_generic(a) && is_generic(b)) {
        verdict = SameDivisorVerdict::distinct;
    } else {
        verdict = SameDivisorVerdict::undecided;
    }

    // Exact cross-check against the defining equations where affordable.
    if (a.all_triples() && b.all_triples() && a.n() <= 8) {
        const bool equations_equal = (hypertree_equation(a) == hypertree_equation(b));
        if ((verdict == SameDivisorVerdict::equal_identical ||
             verdict == SameDivisorVerdict::equal_spherical) && !equations_equal)
            throw internal_error("equal verdict contradicts distinct defining equations");
        if (verdict == SameDivisorVerdict::distinct && equations_equal)
            throw internal_error("distinct verdict contradicts equal defining equations");
    }
    return verdict;
}

} // namespace ht
