#ifndef MRDKIT_RANKCODE_HPP
#define MRDKIT_RANKCODE_HPP

// Linear rank-metric codes in k^{m x n} (m >= n) with a canonical generator
// form, the trace-form dual, rank distance, MRD/self-duality predicates and
// the two families of linear rank isometries
//   proper    kappa_{X,Y} : M -> X M Y
//   improper  tau_{X,Y}   : M -> X M^T Y   (square shapes only).
//
// A code is stored as the RREF of its vectorized generator matrix, so code
// equality is a plain comparison of canonical forms.

#include <optional>
#include <vector>

#include "mrdkit/matfq.hpp"

namespace mrdkit {

class RankMetricCode {
  public:
    // Extracts an independent spanning subset of `gens` (all m x n, m >= n).
    static RankMetricCode from_generators(const FieldCtx& ctx, int m, int n,
                                          const std::vector<MatFq>& gens);

    int m() const { return m_; }
    int n() const { return n_; }
    int dim() const { return canon_.rows(); }
    const FieldCtx& field() const { return *ctx_; }

    // Canonical generators: the rows of the RREF, reshaped to m x n.
    const std::vector<MatFq>& generators() const { return gens_; }
    // dim x (m*n) RREF of the vectorized generators.
    const MatFq& canon() const { return canon_; }

    bool contains(const MatFq& w) const;
    bool operator==(const RankMetricCode& o) const;
    bool operator!=(const RankMetricCode& o) const { return !(*this == o); }

  private:
    RankMetricCode(const FieldCtx& ctx, int m, int n, MatFq canon);

    const FieldCtx* ctx_;
    int m_, n_;
    MatFq canon_;
    std::vector<MatFq> gens_;
};

class EquivMap {
  public:
    enum class Kind { proper, improper };

    static EquivMap proper(MatFq x, MatFq y);    // X in GL_m, Y in GL_n
    static EquivMap improper(MatFq x, MatFq y);  // m = n only

    Kind kind() const { return kind_; }
    const MatFq& X() const { return x_; }
    const MatFq& Y() const { return y_; }

    MatFq operator()(const MatFq& a) const;

    // Projective normal form: first nonzero entry of X scaled to 1 (and Y
    // rescaled inversely). Two pairs describe one map iff they normalize
    // identically.
    EquivMap normalized() const;
    bool same_map(const EquivMap& o) const;

  private:
    EquivMap(Kind k, MatFq x, MatFq y);
    Kind kind_;
    MatFq x_, y_;
};

EquivMap compose(const EquivMap& f, const EquivMap& g);  // f after g
EquivMap inverse(const EquivMap& f);

RankMetricCode apply(const EquivMap& f, const RankMetricCode& c);

// {X in k^{m x n} : <C, X> = 0 for all C}; dim(C) + dim(dual(C)) = mn.
RankMetricCode dual(const RankMetricCode& c);

// Exact minimum nonzero codeword rank, by enumeration of one representative
// per scalar class. Errors: bad_argument on the zero code, too_large when
// (q^dim - 1)/(q - 1) exceeds the codeword budget.
int min_distance(const RankMetricCode& c, const WorkBudget& budget = {});

// Equality in the rank-distance bound, in the integer form dim = m(n - d + 1).
bool is_mrd(const RankMetricCode& c, const WorkBudget& budget = {});

bool is_self_orthogonal(const RankMetricCode& c);
bool is_self_dual(const RankMetricCode& c);

// True iff X^T X = a I_m and Y Y^T = a^{-1} I_n for some a in k^x; exactly
// the linear rank isometries preserving <.,.>.
bool is_isometry_inner_preserving(const EquivMap& f);
// Two independent scalars: X^T X = a I_m, Y Y^T = b I_n (similarities).
bool is_isometry_similarity(const EquivMap& f);

// All maps (in normal form, deterministic order) sending C to D. Proper maps
// come first, then improper ones when improper_too and m = n. Errors:
// too_large when |GL_m| * |GL_n| exceeds the pair budget.
std::vector<EquivMap> brute_equivalences(const RankMetricCode& c, const RankMetricCode& d,
                                         bool improper_too, const WorkBudget& budget = {});

// First equivalence found in the same scan order, or nullopt.
std::optional<EquivMap> find_equivalence(const RankMetricCode& c, const RankMetricCode& d,
                                         bool improper_too, const WorkBudget& budget = {});

// All invertible size x size matrices over F_q, in code order.
std::vector<MatFq> all_invertible(const FieldCtx& ctx, int size, const WorkBudget& budget = {});

u64 count_invertible(const FieldCtx& ctx, int size);  // |GL_size(q)|

}  // namespace mrdkit

#endif
