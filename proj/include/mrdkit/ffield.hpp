#ifndef MRDKIT_FFIELD_HPP
#define MRDKIT_FFIELD_HPP

// Exact arithmetic in F_p, the base field F_q (q = p^e) and the degree-n
// extension K = F_{q^n}, plus the basis machinery (normal bases, dual bases,
// primitive elements) the code constructions are built from.
//
// Elements of F_q are handled as canonical integer codes in [0, q): the
// polynomial coefficients over F_p packed little-endian in base p. Elements
// of K are coefficient vectors of length n over F_q with respect to the
// power basis of ext_poly. Both representations are unique, so equality is
// plain integer comparison.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mrdkit/error.hpp"

namespace mrdkit {

using u64 = std::uint64_t;

class FieldElem;

// Immutable description of the tower F_p < F_q < K = F_{q^n}.
//
// Construction verifies primality of p and irreducibility of both defining
// polynomials; omitted polynomials are chosen as the lexicographically
// smallest monic irreducible (coefficients compared constant term first).
// All scans over K run in canonical code order (sum of coeff * q^i), which
// fixes every derived object (normal basis, primitive element) uniquely.
class FieldCtx {
  public:
    // base_poly: monic of degree e over F_p, constant-first, entries in [0,p).
    // ext_poly: monic of degree n over F_q, constant-first, entries are F_q codes.
    static std::shared_ptr<const FieldCtx> create(
        u64 p, unsigned e, unsigned n,
        std::optional<std::vector<u64>> base_poly = std::nullopt,
        std::optional<std::vector<u64>> ext_poly = std::nullopt);

    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;

    u64 p() const { return p_; }
    unsigned e() const { return e_; }
    unsigned n() const { return n_; }
    u64 q() const { return q_; }
    u64 q_pow_n() const { return qn_; }
    const std::vector<u64>& base_poly() const { return base_poly_; }
    const std::vector<u64>& ext_poly() const { return ext_poly_; }

    bool operator==(const FieldCtx& o) const;

    // ---- F_q arithmetic on canonical codes ----
    u64 add(u64 a, u64 b) const;
    u64 sub(u64 a, u64 b) const;
    u64 neg(u64 a) const;
    u64 mul(u64 a, u64 b) const;
    u64 inv(u64 a) const;  // bad_argument on 0
    u64 pow(u64 a, u64 k) const;
    // Euler criterion a^((q-1)/2); nonzero squares only, is_square(0) = false.
    bool is_square(u64 a) const;  // char_two if q even
    // Deterministic square root: of the two roots, the one whose coefficient
    // vector (constant first) is lexicographically smaller. nullopt: nonsquare.
    std::optional<u64> sqrt(u64 a) const;  // char_two if q even

    std::vector<u64> fq_coeffs(u64 code) const;          // length e, values in [0,p)
    u64 fq_from_coeffs(const std::vector<u64>& c) const;

    // ---- K arithmetic on coefficient vectors (length n of F_q codes) ----
    using KVec = std::vector<u64>;
    KVec k_zero() const { return KVec(n_, 0); }
    KVec k_one() const;
    KVec k_add(const KVec& a, const KVec& b) const;
    KVec k_sub(const KVec& a, const KVec& b) const;
    KVec k_neg(const KVec& a) const;
    KVec k_mul(const KVec& a, const KVec& b) const;
    KVec k_inv(const KVec& a) const;  // bad_argument on 0
    KVec k_pow(const KVec& a, u64 k) const;
    KVec k_frob(const KVec& a, unsigned i) const;  // a^(q^i)
    u64 k_trace(const KVec& a) const;              // sum of all n conjugates, as an F_q code
    bool k_is_zero(const KVec& a) const;

    // Canonical integer code of a K element (sum coeff * q^i) and back;
    // defines the scan order used by every deterministic search.
    u64 k_index(const KVec& a) const;
    KVec k_from_index(u64 idx) const;

    // Prime factorizations computed at construction.
    const std::vector<std::pair<u64, unsigned>>& factors_qn_minus_1() const { return fac_qn1_; }
    const std::vector<std::pair<u64, unsigned>>& factors_q_minus_1() const { return fac_q1_; }

    // ---- element factories ----
    FieldElem zero_k() const;
    FieldElem one_k() const;
    FieldElem elem_fq(u64 code) const;
    FieldElem elem_k(const KVec& coeffs) const;
    FieldElem elem_k_from_index(u64 idx) const;

  private:
    FieldCtx() = default;

    u64 p_ = 0;
    unsigned e_ = 0;
    unsigned n_ = 0;
    u64 q_ = 0;
    u64 qn_ = 0;
    std::vector<u64> base_poly_;
    std::vector<u64> ext_poly_;
    std::vector<u64> pow_p_;                    // p^0..p^e for packing
    std::vector<std::vector<u64>> frob_mat_;    // n x n, column i = coords of (x^i)^q
    std::vector<std::pair<u64, unsigned>> fac_qn1_;
    std::vector<std::pair<u64, unsigned>> fac_q1_;
};

enum class Level { Fp, Fq, K };

// One element of F_p, F_q or K, tagged with its level. Values are always
// reduced; equality is representation equality.
class FieldElem {
  public:
    FieldElem(const FieldCtx& ctx, Level lvl, std::vector<u64> data);

    Level level() const { return lvl_; }
    const FieldCtx& ctx() const { return *ctx_; }

    u64 code() const;                      // Fp/Fq only
    const std::vector<u64>& kvec() const;  // K only
    bool is_zero() const;

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem inverse() const;
    FieldElem pow(u64 k) const;
    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    FieldElem lifted_to_k() const;                 // F_p/F_q constant into K
    std::optional<FieldElem> coerced_to_fq() const;  // succeeds iff the element lies in F_q

  private:
    const FieldCtx* ctx_;
    Level lvl_;
    std::vector<u64> data_;  // Fp/Fq: {code}; K: n F_q codes
};

struct Basis {
    enum class Kind { arbitrary, normal, dual };
    std::vector<FieldElem> elements;  // n elements of K, verified independent
    Kind kind = Kind::arbitrary;

    const FieldCtx& ctx() const { return elements.at(0).ctx(); }
};

// alpha^(q^i); i is reduced mod n.
FieldElem frobenius(const FieldElem& alpha, u64 i);

// Trace in K over F_q: sum of all n Frobenius conjugates (result at level Fq).
FieldElem rel_trace(const FieldElem& alpha);

// First gamma in scan order whose conjugate coordinate matrix is invertible;
// returns (gamma, gamma^[1], ..., gamma^[n-1]).
Basis find_normal_basis(const FieldCtx& ctx);

// Basis B* with Trace(b_i * b*_j) = delta_ij; all n^2 equations are checked.
Basis dual_basis(const Basis& b);

// First element in scan order of multiplicative order q^n - 1.
FieldElem primitive_element(const FieldCtx& ctx);

// Square root in F_q with the deterministic tie-break of FieldCtx::sqrt.
std::optional<FieldElem> sqrt_fq(const FieldElem& a);

bool same_field(const FieldCtx& a, const FieldCtx& b);

}  // namespace mrdkit

#endif
