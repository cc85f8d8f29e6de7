#include "mrdkit/rankcode.hpp"

#include <algorithm>

namespace mrdkit {

namespace {

MatFq reshape_row(const FieldCtx& ctx, const MatFq& flat, int row, int m, int n) {
    MatFq w(ctx, m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) w(i, j) = flat(row, i * n + j);
    return w;
}

// Projective count 1 + q + ... + q^(dim-1), capped.
u64 projective_count(u64 q, int dim, u64 cap) {
    u64 total = 0, term = 1;
    for (int i = 0; i < dim; ++i) {
        if (total > cap || term > cap - total) return cap + 1;
        total += term;
        if (i + 1 < dim) {
            if (term > cap / q + 1) return cap + 1;
            term *= q;
        }
    }
    return total;
}

}  // namespace

RankMetricCode::RankMetricCode(const FieldCtx& ctx, int m, int n, MatFq canon)
    : ctx_(&ctx), m_(m), n_(n), canon_(std::move(canon)) {
    gens_.reserve(canon_.rows());
    for (int r = 0; r < canon_.rows(); ++r) gens_.push_back(reshape_row(ctx, canon_, r, m_, n_));
}

RankMetricCode RankMetricCode::from_generators(const FieldCtx& ctx, int m, int n,
                                               const std::vector<MatFq>& gens) {
    if (m < 1 || n < 1) throw MrdError(errc::bad_argument, "ambient shape must be positive");
    if (m < n) throw MrdError(errc::wrong_orientation, "m < n: transpose the ambient space first");
    MatFq stacked(ctx, int(gens.size()), m * n);
    for (size_t g = 0; g < gens.size(); ++g) {
        if (gens[g].rows() != m || gens[g].cols() != n)
            throw MrdError(errc::shape_mismatch, "generator shape differs from ambient shape");
        if (!same_field(gens[g].field(), ctx))
            throw MrdError(errc::bad_argument, "generator over a different field");
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) stacked(int(g), i * n + j) = gens[g](i, j);
    }
    auto [r, pivots] = stacked.rref();
    MatFq canon(ctx, int(pivots.size()), m * n);
    for (size_t i = 0; i < pivots.size(); ++i)
        for (int j = 0; j < m * n; ++j) canon(int(i), j) = r(int(i), j);
    return RankMetricCode(ctx, m, n, std::move(canon));
}

bool RankMetricCode::contains(const MatFq& w) const {
    if (w.rows() != m_ || w.cols() != n_) throw MrdError(errc::shape_mismatch, "word shape differs");
    MatFq stacked(*ctx_, canon_.rows() + 1, m_ * n_);
    for (int i = 0; i < canon_.rows(); ++i)
        for (int j = 0; j < m_ * n_; ++j) stacked(i, j) = canon_(i, j);
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < n_; ++j) stacked(canon_.rows(), i * n_ + j) = w(i, j);
    return stacked.rank() == canon_.rows();
}

bool RankMetricCode::operator==(const RankMetricCode& o) const {
    return m_ == o.m_ && n_ == o.n_ && same_field(*ctx_, *o.ctx_) && canon_ == o.canon_;
}

RankMetricCode dual(const RankMetricCode& c) {
    const FieldCtx& F = c.field();
    MatFq ker = c.canon().kernel();
    std::vector<MatFq> gens;
    gens.reserve(ker.rows());
    for (int r = 0; r < ker.rows(); ++r) gens.push_back(reshape_row(F, ker, r, c.m(), c.n()));
    RankMetricCode d = RankMetricCode::from_generators(F, c.m(), c.n(), gens);
    if (d.dim() + c.dim() != c.m() * c.n())
        throw MrdError(errc::internal, "dual dimension mismatch");
    return d;
}

int min_distance(const RankMetricCode& c, const WorkBudget& budget) {
    const FieldCtx& F = c.field();
    const int dim = c.dim();
    if (dim < 1) throw MrdError(errc::bad_argument, "minimum distance of the zero code");
    const u64 reps = projective_count(F.q(), dim, budget.max_codewords);
    if (reps > budget.max_codewords)
        throw TooLargeError(reps, budget.max_codewords, "projective codeword enumeration");

    // one representative per scalar class: leading coefficient fixed to 1
    int best = c.n() + 1;
    std::vector<u64> coeff(dim, 0);
    for (int lead = 0; lead < dim && best > 1; ++lead) {
        std::fill(coeff.begin(), coeff.end(), 0);
        coeff[lead] = 1;
        for (;;) {
            MatFq word(F, c.m(), c.n());
            for (int g = lead; g < dim; ++g) {
                if (coeff[g] == 0) continue;
                word = word + c.generators()[g].scaled(coeff[g]);
            }
            best = std::min(best, word.rank());
            if (best == 1) break;
            // odometer over the positions after `lead`
            int pos = dim - 1;
            while (pos > lead && coeff[pos] == F.q() - 1) coeff[pos--] = 0;
            if (pos == lead) break;
            ++coeff[pos];
        }
    }
    return best;
}

bool is_mrd(const RankMetricCode& c, const WorkBudget& budget) {
    const int d = min_distance(c, budget);
    return c.dim() == c.m() * (c.n() - d + 1);
}

bool is_self_orthogonal(const RankMetricCode& c) {
    const auto& g = c.generators();
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = i; j < g.size(); ++j)
            if (inner(g[i], g[j]) != 0) return false;
    return true;
}

bool is_self_dual(const RankMetricCode& c) {
    return 2 * c.dim() == c.m() * c.n() && is_self_orthogonal(c);
}

// ----------------------------------------------------------------- EquivMap

EquivMap::EquivMap(Kind k, MatFq x, MatFq y) : kind_(k), x_(std::move(x)), y_(std::move(y)) {}

EquivMap EquivMap::proper(MatFq x, MatFq y) {
    if (x.rows() != x.cols() || y.rows() != y.cols())
        throw MrdError(errc::shape_mismatch, "X and Y must be square");
    if (x.det() == 0 || y.det() == 0) throw MrdError(errc::singular, "X and Y must be invertible");
    return EquivMap(Kind::proper, std::move(x), std::move(y));
}

EquivMap EquivMap::improper(MatFq x, MatFq y) {
    if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows())
        throw MrdError(errc::shape_mismatch, "improper maps need m = n");
    if (x.det() == 0 || y.det() == 0) throw MrdError(errc::singular, "X and Y must be invertible");
    return EquivMap(Kind::improper, std::move(x), std::move(y));
}

MatFq EquivMap::operator()(const MatFq& a) const {
    if (kind_ == Kind::proper) {
        if (x_.cols() != a.rows() || a.cols() != y_.rows())
            throw MrdError(errc::shape_mismatch, "map does not fit the word shape");
        return x_ * a * y_;
    }
    if (a.rows() != a.cols() || x_.cols() != a.rows())
        throw MrdError(errc::shape_mismatch, "improper maps act on square shapes");
    return x_ * a.transposed() * y_;
}

EquivMap EquivMap::normalized() const {
    const FieldCtx& F = x_.field();
    u64 lead = 0;
    for (int i = 0; i < x_.rows() && lead == 0; ++i)
        for (int j = 0; j < x_.cols() && lead == 0; ++j) lead = x_(i, j);
    const u64 c = F.inv(lead);
    return EquivMap(kind_, x_.scaled(c), y_.scaled(lead));
}

bool EquivMap::same_map(const EquivMap& o) const {
    if (kind_ != o.kind_) return false;
    const EquivMap a = normalized(), b = o.normalized();
    return a.x_ == b.x_ && a.y_ == b.y_;
}

EquivMap compose(const EquivMap& f, const EquivMap& g) {
    using K = EquivMap::Kind;
    if (f.kind() == K::proper && g.kind() == K::proper)
        return EquivMap::proper(f.X() * g.X(), g.Y() * f.Y());
    if (f.kind() == K::proper && g.kind() == K::improper)
        return EquivMap::improper(f.X() * g.X(), g.Y() * f.Y());
    if (f.kind() == K::improper && g.kind() == K::proper)
        return EquivMap::improper(f.X() * g.Y().transposed(), g.X().transposed() * f.Y());
    return EquivMap::proper(f.X() * g.Y().transposed(), g.X().transposed() * f.Y());
}

EquivMap inverse(const EquivMap& f) {
    if (f.kind() == EquivMap::Kind::proper)
        return EquivMap::proper(f.X().inverse(), f.Y().inverse());
    return EquivMap::improper(f.Y().inverse().transposed(), f.X().inverse().transposed());
}

RankMetricCode apply(const EquivMap& f, const RankMetricCode& c) {
    std::vector<MatFq> gens;
    gens.reserve(c.generators().size());
    for (const MatFq& g : c.generators()) gens.push_back(f(g));
    return RankMetricCode::from_generators(c.field(), c.m(), c.n(), gens);
}

// ------------------------------------------------------- isometry predicates

namespace {
// M = a I for some a != 0; returns a or 0.
u64 scalar_of(const MatFq& m) {
    const u64 a = m(0, 0);
    if (a == 0) return 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j) != (i == j ? a : 0)) return 0;
    return a;
}
}  // namespace

bool is_isometry_inner_preserving(const EquivMap& f) {
    const FieldCtx& F = f.X().field();
    const u64 a = scalar_of(f.X().transposed() * f.X());
    if (a == 0) return false;
    const u64 b = scalar_of(f.Y() * f.Y().transposed());
    return b != 0 && F.mul(a, b) == 1;
}

bool is_isometry_similarity(const EquivMap& f) {
    return scalar_of(f.X().transposed() * f.X()) != 0 && scalar_of(f.Y() * f.Y().transposed()) != 0;
}

// ------------------------------------------------------- brute-force search

u64 count_invertible(const FieldCtx& ctx, int size) {
    // |GL_size(q)| = prod_{i<size} (q^size - q^i)
    unsigned __int128 total = 1;
    unsigned __int128 qs = 1;
    for (int i = 0; i < size; ++i) qs *= ctx.q();
    unsigned __int128 qi = 1;
    for (int i = 0; i < size; ++i) {
        total *= (qs - qi);
        qi *= ctx.q();
        if (total > (unsigned __int128)(~u64(0))) throw MrdError(errc::overflow, "|GL| exceeds 2^64");
    }
    return u64(total);
}

std::vector<MatFq> all_invertible(const FieldCtx& ctx, int size, const WorkBudget& budget) {
    unsigned __int128 space = 1;
    for (int i = 0; i < size * size; ++i) {
        space *= ctx.q();
        if (space > budget.max_group_pairs)
            throw TooLargeError(u64(space > (unsigned __int128)~u64(0) ? ~u64(0) : u64(space)),
                                budget.max_group_pairs, "matrix space enumeration");
    }
    std::vector<MatFq> out;
    std::vector<u64> digits(size_t(size) * size, 0);
    for (;;) {
        MatFq m = MatFq::from_rows(ctx, size, size, digits);
        if (m.det() != 0) out.push_back(std::move(m));
        int pos = size * size - 1;
        while (pos >= 0 && digits[pos] == ctx.q() - 1) digits[pos--] = 0;
        if (pos < 0) break;
        ++digits[pos];
    }
    return out;
}

namespace {

struct EquivScan {
    const RankMetricCode& c;
    const RankMetricCode& d;
    bool improper_too;
    const WorkBudget& budget;

    template <class Visit>
    void run(Visit&& visit) const {
        const FieldCtx& F = c.field();
        if (c.m() != d.m() || c.n() != d.n())
            throw MrdError(errc::shape_mismatch, "codes live in different ambient spaces");
        const u64 pairs = [&] {
            unsigned __int128 t = (unsigned __int128)count_invertible(F, c.m()) * count_invertible(F, c.n());
            return t > (unsigned __int128)~u64(0) ? ~u64(0) : u64(t);
        }();
        if (pairs > budget.max_group_pairs)
            throw TooLargeError(pairs, budget.max_group_pairs, "equivalence search over GL x GL");

        const auto gl_m = all_invertible(F, c.m(), budget);
        const auto gl_n = c.m() == c.n() ? gl_m : all_invertible(F, c.n(), budget);
        const bool with_improper = improper_too && c.m() == c.n();

        for (const MatFq& x : gl_m) {
            // one X per projective class: first nonzero entry = 1
            u64 lead = 0;
            for (size_t i = 0; i < x.data().size() && lead == 0; ++i) lead = x.data()[i];
            if (lead != 1) continue;
            // precompute X * g (proper) and X * g^T (improper)
            std::vector<MatFq> xg, xgt;
            xg.reserve(c.generators().size());
            for (const MatFq& g : c.generators()) {
                xg.push_back(x * g);
                if (with_improper) xgt.push_back(x * g.transposed());
            }
            std::vector<MatFq> words;
            words.reserve(c.generators().size());
            for (const MatFq& y : gl_n) {
                words.clear();
                for (const MatFq& w : xg) words.push_back(w * y);
                RankMetricCode image = RankMetricCode::from_generators(F, c.m(), c.n(), words);
                if (image == d)
                    if (visit(EquivMap::proper(x, y))) return;
                if (with_improper) {
                    words.clear();
                    for (const MatFq& w : xgt) words.push_back(w * y);
                    RankMetricCode timage = RankMetricCode::from_generators(F, c.m(), c.n(), words);
                    if (timage == d)
                        if (visit(EquivMap::improper(x, y))) return;
                }
            }
        }
    }
};

}  // namespace

std::vector<EquivMap> brute_equivalences(const RankMetricCode& c, const RankMetricCode& d,
                                         bool improper_too, const WorkBudget& budget) {
    std::vector<EquivMap> out;
    EquivScan{c, d, improper_too, budget}.run([&](EquivMap m) {
        out.push_back(std::move(m));
        return false;
    });
    // proper maps before improper ones, scan order within each kind
    std::stable_partition(out.begin(), out.end(),
                          [](const EquivMap& m) { return m.kind() == EquivMap::Kind::proper; });
    return out;
}

std::optional<EquivMap> find_equivalence(const RankMetricCode& c, const RankMetricCode& d,
                                         bool improper_too, const WorkBudget& budget) {
    std::optional<EquivMap> found;
    EquivScan{c, d, improper_too, budget}.run([&](EquivMap m) {
        found = std::move(m);
        return true;
    });
    return found;
}

}  // namespace mrdkit
