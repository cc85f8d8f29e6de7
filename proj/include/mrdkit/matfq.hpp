#ifndef MRDKIT_MATFQ_HPP
#define MRDKIT_MATFQ_HPP

// Dense matrices over F_q. Entries are canonical F_q codes; all elimination
// uses first-nonzero pivoting, so rref/kernel/inverse are deterministic.

#include <utility>
#include <vector>

#include "mrdkit/ffield.hpp"

namespace mrdkit {

class MatFq {
  public:
    MatFq(const FieldCtx& ctx, int rows, int cols);  // zero matrix
    static MatFq identity(const FieldCtx& ctx, int n);
    static MatFq from_rows(const FieldCtx& ctx, int rows, int cols, std::vector<u64> row_major);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldCtx& field() const { return *ctx_; }

    u64 operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
    u64& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const std::vector<u64>& data() const { return a_; }

    MatFq operator+(const MatFq& o) const;
    MatFq operator-(const MatFq& o) const;
    MatFq operator*(const MatFq& o) const;
    MatFq operator-() const;
    MatFq scaled(u64 c) const;
    MatFq transposed() const;
    MatFq pow(u64 k) const;  // square matrices

    u64 trace() const;  // square matrices
    u64 det() const;    // square matrices
    int rank() const;
    MatFq inverse() const;  // errc::singular when rank-deficient

    // Unique reduced row echelon form and the list of pivot columns.
    std::pair<MatFq, std::vector<int>> rref() const;
    // Basis of the right null space, one vector per row, in the canonical
    // order derived from the rref free columns. Row count = cols - rank.
    MatFq kernel() const;

    bool is_symmetric() const;
    bool is_zero() const;
    bool operator==(const MatFq& o) const;
    bool operator!=(const MatFq& o) const { return !(*this == o); }

  private:
    const FieldCtx* ctx_;
    int rows_, cols_;
    std::vector<u64> a_;  // row-major codes
};

// <A,B> = trace(A B^T) = sum_ij A_ij B_ij; the standard inner product under
// the fixed row-major identification of k^{m x n} with k^{1 x mn}.
u64 inner(const MatFq& a, const MatFq& b);

// True iff det(M) is a nonzero square in F_q.
// Errors: char_two (q even), singular_input (det = 0).
bool is_square_det(const MatFq& m);

MatFq all_ones(const FieldCtx& ctx, int rows, int cols);

}  // namespace mrdkit

#endif
