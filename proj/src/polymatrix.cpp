#include "ht/polymatrix.hpp"

#include <cstdint>
#include <unordered_map>

namespace ht {

PolyMatrix::PolyMatrix(VarContext ctx, int rows, int cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw input_error("negative matrix dimension");
    data_.assign(static_cast<std::size_t>(rows) * cols, Poly(ctx_));
}

PolyMatrix PolyMatrix::submatrix(const std::vector<int>& keep_rows,
                                 const std::vector<int>& keep_cols) const {
    PolyMatrix s(ctx_, static_cast<int>(keep_rows.size()), static_cast<int>(keep_cols.size()));
    for (std::size_t r = 0; r < keep_rows.size(); ++r) {
        if (keep_rows[r] < 0 || keep_rows[r] >= rows_) throw input_error("row out of range");
        for (std::size_t c = 0; c < keep_cols.size(); ++c) {
            if (keep_cols[c] < 0 || keep_cols[c] >= cols_) throw input_error("column out of range");
            s.at(static_cast<int>(r), static_cast<int>(c)) = at(keep_rows[r], keep_cols[c]);
        }
    }
    return s;
}

PolyMatrix PolyMatrix::transposed() const {
    PolyMatrix t(ctx_, cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

PolyMatrix PolyMatrix::negated() const {
    PolyMatrix t(ctx_, rows_, cols_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.at(r, c) = -at(r, c);
    return t;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || ctx_ != o.ctx_) return false;
    return data_ == o.data_;
}

namespace {

// Rows are processed top to bottom; the subproblem is identified by the mask
// of still-active columns (the active row count equals its popcount).
Poly det_memo(const PolyMatrix& m, std::uint32_t colmask,
              std::unordered_map<std::uint32_t, Poly>& memo) {
    if (colmask == 0) return Poly::constant(m.context(), 1);
    auto it = memo.find(colmask);
    if (it != memo.end()) return it->second;
    const int row = m.rows() - __builtin_popcount(colmask);
    Poly result(m.context());
    int sign = 1;
    for (std::uint32_t rest = colmask; rest;) {
        const int c = __builtin_ctz(rest);
        rest &= rest - 1;
        const Poly& e = m.at(row, c);
        if (!e.is_zero()) {
            Poly sub = det_memo(m, colmask & ~(1u << c), memo);
            Poly prod = e * sub;
            result = sign > 0 ? result + prod : result - prod;
        }
        sign = -sign;
    }
    memo.emplace(colmask, result);
    return result;
}

}  // namespace

Poly determinant(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw precondition_error("determinant of a non-square matrix");
    if (m.rows() > 30) throw budget_error("matrix too large for determinant expansion");
    if (m.rows() == 0) return Poly::constant(m.context(), 1);
    std::unordered_map<std::uint32_t, Poly> memo;
    return det_memo(m, (m.rows() == 32 ? ~0u : ((1u << m.rows()) - 1)), memo);
}

Poly determinant_bareiss(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw precondition_error("determinant of a non-square matrix");
    const int n = m.rows();
    if (n == 0) return Poly::constant(m.context(), 1);
    PolyMatrix a = m;
    Poly prev = Poly::constant(m.context(), 1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k).is_zero()) {
            int swap = -1;
            for (int r = k + 1; r < n; ++r)
                if (!a.at(r, k).is_zero()) { swap = r; break; }
            if (swap < 0) return Poly(m.context());  // singular
            for (int c = 0; c < n; ++c) std::swap(a.at(k, c), a.at(swap, c));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Poly num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                a.at(i, j) = num.is_zero() ? num : num.divided_exactly_by(prev);
            }
            a.at(i, k) = Poly(m.context());
        }
        prev = a.at(k, k);
    }
    Poly d = a.at(n - 1, n - 1);
    return sign > 0 ? d : -d;
}

} // namespace ht
