#pragma once
#include <vector>

#include "ht/poly.hpp"

namespace ht {

// Dense matrix of polynomials sharing one variable context.
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(VarContext ctx, int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const VarContext& context() const { return ctx_; }

    Poly& at(int r, int c) { return data_[r * cols_ + c]; }
    const Poly& at(int r, int c) const { return data_[r * cols_ + c]; }

    // Submatrix keeping the given rows/columns (in the given order).
    PolyMatrix submatrix(const std::vector<int>& keep_rows,
                         const std::vector<int>& keep_cols) const;
    PolyMatrix transposed() const;
    PolyMatrix negated() const;
    bool operator==(const PolyMatrix& o) const;

private:
    VarContext ctx_;
    int rows_ = 0, cols_ = 0;
    std::vector<Poly> data_;
};

// Determinant by cofactor expansion with memoization on column subsets.
// Efficient on the sparse linear-form matrices produced here.  Square input
// required; the empty matrix has determinant 1.
Poly determinant(const PolyMatrix& m);

// Determinant by fraction-free (Bareiss) elimination with exact divisions.
// Independent of `determinant`; the two must agree, which is used as a
// cross-check in tests.
Poly determinant_bareiss(const PolyMatrix& m);

} // namespace ht
