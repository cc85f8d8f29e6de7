#ifndef MRDKIT_GABIDULIN_HPP
#define MRDKIT_GABIDULIN_HPP

// Full-length Gabidulin codes G_{l,Gamma} in k^{n x n} built from a normal
// basis Gamma, together with the structural matrices
//   T = Gram matrix of the trace form w.r.t. Gamma,
//   A = cyclic shift, the matrix of gamma -> gamma^[1],
//   S = Singer matrix of a primitive element sigma,
// and their verified relations. Row/column indices are 0-based throughout,
// with position j standing for the conjugate gamma^[j].

#include <vector>

#include "mrdkit/rankcode.hpp"

namespace mrdkit {

// Coordinate matrix: column j holds the B-coordinates of v[j].
MatFq epsilon(const Basis& b, const std::vector<FieldElem>& v);

// n x n matrix over F_q whose column i is the power-basis coordinate vector
// of the i-th basis element.
MatFq coordinate_matrix(const Basis& b);

// Gram matrix of the trace form: G_ij = Trace(b_i * b_j).
MatFq trace_gram(const Basis& b);

class GabidulinCtx {
  public:
    // Deterministic: the normal basis and the primitive element both come
    // from the canonical scan order of ctx. Construction checks every
    // structural identity and throws errc::internal naming the violated one.
    static GabidulinCtx make(std::shared_ptr<const FieldCtx> ctx);

    const FieldCtx& field() const { return *ctx_; }
    std::shared_ptr<const FieldCtx> field_ptr() const { return ctx_; }
    unsigned n() const { return ctx_->n(); }

    const Basis& gamma() const { return gamma_; }
    const Basis& gamma_dual() const { return gamma_dual_; }
    const FieldElem& sigma() const { return sigma_; }

    const MatFq& gram() const { return gram_; }     // T, symmetric invertible
    const MatFq& shift() const { return shift_; }   // A, A^n = I
    const MatFq& singer() const { return singer_; } // S, order q^n - 1
    u64 singer_det() const { return delta_; }       // det(S), order q - 1

    // The matrix of multiplication by alpha on K w.r.t. Gamma (an element of
    // the subalgebra curly-K when alpha != 0, the zero matrix otherwise).
    MatFq k_matrix(const FieldElem& alpha) const;

  private:
    GabidulinCtx(std::shared_ptr<const FieldCtx> ctx, Basis gamma, Basis gamma_dual,
                 FieldElem sigma, MatFq gram, MatFq shift, MatFq singer, u64 delta);

    std::shared_ptr<const FieldCtx> ctx_;
    Basis gamma_;
    Basis gamma_dual_;
    FieldElem sigma_;
    MatFq gram_, shift_, singer_;
    u64 delta_;
    MatFq gamma_coords_inv_;  // cached inverse coordinate matrix of Gamma
};

// G_{l,Gamma} for 1 <= l <= n (errc::bad_ell otherwise). Both generating
// descriptions -- epsilon(gamma_i Gamma^[j]) and the layer sum K + KA + ...
// + KA^{l-1} -- are built and checked to span the same code.
RankMetricCode gab_code(const GabidulinCtx& g, unsigned ell);

// epsilon_Gamma(alpha Gamma)^T = epsilon_Gamma*(alpha Gamma*) = T eps T^{-1}.
bool verify_basechange(const GabidulinCtx& g, const FieldElem& alpha);

// trace(B A^i) = 0 for B in curly-K and 1 <= i <= n-1; exhaustive over all
// powers of S when q^n - 1 fits the codeword budget, sampled otherwise.
bool verify_trace_vanishing(const GabidulinCtx& g, const WorkBudget& budget = {});

// Generators of the automorphism group of G_{l,Gamma} for 0 < l < n:
// kappa_{S,I}, kappa_{I,S}, kappa_{A,A^{-1}} and tau_{T^{-1}, T A^{l-1}}.
// Each one is checked to fix the code before being returned.
std::vector<EquivMap> aut_generators(const GabidulinCtx& g, unsigned ell);

// |Aut(G_{l,Gamma})| = 2 n (q^n - 1)^2 / (q - 1) for 0 < l < n.
u64 aut_order(const GabidulinCtx& g, unsigned ell);

}  // namespace mrdkit

#endif
