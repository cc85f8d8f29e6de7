#include "mrdkit/matfq.hpp"

namespace mrdkit {

namespace {
void check_same_shape(const MatFq& a, const MatFq& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw MrdError(errc::shape_mismatch, "matrix shapes differ");
    if (!same_field(a.field(), b.field()))
        throw MrdError(errc::bad_argument, "matrices over different fields");
}
}  // namespace

MatFq::MatFq(const FieldCtx& ctx, int rows, int cols)
    : ctx_(&ctx), rows_(rows), cols_(cols), a_(size_t(rows) * size_t(cols), 0) {
    if (rows < 0 || cols < 0) throw MrdError(errc::bad_argument, "negative matrix shape");
}

MatFq MatFq::identity(const FieldCtx& ctx, int n) {
    MatFq m(ctx, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

MatFq MatFq::from_rows(const FieldCtx& ctx, int rows, int cols, std::vector<u64> row_major) {
    if (row_major.size() != size_t(rows) * size_t(cols))
        throw MrdError(errc::shape_mismatch, "entry count does not match shape");
    MatFq m(ctx, rows, cols);
    for (u64& v : row_major)
        if (v >= ctx.q()) throw MrdError(errc::bad_argument, "entry is not a canonical F_q code");
    m.a_ = std::move(row_major);
    return m;
}

MatFq all_ones(const FieldCtx& ctx, int rows, int cols) {
    MatFq m(ctx, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = 1;
    return m;
}

MatFq MatFq::operator+(const MatFq& o) const {
    check_same_shape(*this, o);
    MatFq r(*ctx_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = ctx_->add(a_[i], o.a_[i]);
    return r;
}

MatFq MatFq::operator-(const MatFq& o) const {
    check_same_shape(*this, o);
    MatFq r(*ctx_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = ctx_->sub(a_[i], o.a_[i]);
    return r;
}

MatFq MatFq::operator-() const {
    MatFq r(*ctx_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = ctx_->neg(a_[i]);
    return r;
}

MatFq MatFq::scaled(u64 c) const {
    MatFq r(*ctx_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = ctx_->mul(a_[i], c);
    return r;
}

MatFq MatFq::operator*(const MatFq& o) const {
    if (cols_ != o.rows_) throw MrdError(errc::shape_mismatch, "inner dimensions differ");
    if (!same_field(*ctx_, *o.ctx_)) throw MrdError(errc::bad_argument, "matrices over different fields");
    MatFq r(*ctx_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const u64 aik = (*this)(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const u64 b = o(k, j);
                if (b) r(i, j) = ctx_->add(r(i, j), ctx_->mul(aik, b));
            }
        }
    return r;
}

MatFq MatFq::transposed() const {
    MatFq r(*ctx_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

MatFq MatFq::pow(u64 k) const {
    if (rows_ != cols_) throw MrdError(errc::shape_mismatch, "pow needs a square matrix");
    MatFq r = identity(*ctx_, rows_);
    MatFq base = *this;
    while (k) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

u64 MatFq::trace() const {
    if (rows_ != cols_) throw MrdError(errc::shape_mismatch, "trace needs a square matrix");
    u64 t = 0;
    for (int i = 0; i < rows_; ++i) t = ctx_->add(t, (*this)(i, i));
    return t;
}

std::pair<MatFq, std::vector<int>> MatFq::rref() const {
    MatFq r = *this;
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
        // first nonzero pivot below `row`
        int piv = -1;
        for (int i = row; i < rows_; ++i)
            if (r(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < cols_; ++j) std::swap(r(row, j), r(piv, j));
        const u64 inv = ctx_->inv(r(row, col));
        for (int j = col; j < cols_; ++j) r(row, j) = ctx_->mul(r(row, j), inv);
        for (int i = 0; i < rows_; ++i) {
            if (i == row) continue;
            const u64 f = r(i, col);
            if (f == 0) continue;
            for (int j = col; j < cols_; ++j)
                r(i, j) = ctx_->sub(r(i, j), ctx_->mul(f, r(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(r), std::move(pivots)};
}

int MatFq::rank() const { return int(rref().second.size()); }

u64 MatFq::det() const {
    if (rows_ != cols_) throw MrdError(errc::shape_mismatch, "det needs a square matrix");
    MatFq r = *this;
    u64 d = 1;
    for (int col = 0; col < cols_; ++col) {
        int piv = -1;
        for (int i = col; i < rows_; ++i)
            if (r(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return 0;
        if (piv != col) {
            for (int j = 0; j < cols_; ++j) std::swap(r(col, j), r(piv, j));
            d = ctx_->neg(d);
        }
        d = ctx_->mul(d, r(col, col));
        const u64 inv = ctx_->inv(r(col, col));
        for (int i = col + 1; i < rows_; ++i) {
            const u64 f = ctx_->mul(r(i, col), inv);
            if (f == 0) continue;
            for (int j = col; j < cols_; ++j)
                r(i, j) = ctx_->sub(r(i, j), ctx_->mul(f, r(col, j)));
        }
    }
    return d;
}

MatFq MatFq::inverse() const {
    if (rows_ != cols_) throw MrdError(errc::shape_mismatch, "inverse needs a square matrix");
    MatFq aug(*ctx_, rows_, 2 * cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
        aug(i, cols_ + i) = 1;
    }
    auto [r, pivots] = aug.rref();
    if (int(pivots.size()) != rows_ || (rows_ > 0 && pivots.back() >= cols_))
        throw MrdError(errc::singular, "matrix is not invertible");
    MatFq inv(*ctx_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) inv(i, j) = r(i, cols_ + j);
    return inv;
}

MatFq MatFq::kernel() const {
    auto [r, pivots] = rref();
    std::vector<int> free_cols;
    {
        size_t pi = 0;
        for (int c = 0; c < cols_; ++c) {
            if (pi < pivots.size() && pivots[pi] == c)
                ++pi;
            else
                free_cols.push_back(c);
        }
    }
    MatFq basis(*ctx_, int(free_cols.size()), cols_);
    for (size_t k = 0; k < free_cols.size(); ++k) {
        const int f = free_cols[k];
        basis(int(k), f) = 1;
        for (size_t i = 0; i < pivots.size(); ++i) basis(int(k), pivots[i]) = ctx_->neg(r(int(i), f));
    }
    return basis;
}

bool MatFq::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool MatFq::is_zero() const {
    for (u64 v : a_)
        if (v) return false;
    return true;
}

bool MatFq::operator==(const MatFq& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && same_field(*ctx_, *o.ctx_) && a_ == o.a_;
}

u64 inner(const MatFq& a, const MatFq& b) {
    check_same_shape(a, b);
    const FieldCtx& F = a.field();
    u64 s = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s = F.add(s, F.mul(a(i, j), b(i, j)));
    return s;
}

bool is_square_det(const MatFq& m) {
    const FieldCtx& F = m.field();
    if (F.p() == 2) throw MrdError(errc::char_two, "square-determinant test needs odd q");
    const u64 d = m.det();
    if (d == 0) throw MrdError(errc::singular_input, "square-determinant test needs full rank");
    return F.is_square(d);
}

}  // namespace mrdkit
