#ifndef MRDKIT_SELFDUAL_HPP
#define MRDKIT_SELFDUAL_HPP

// Self-duality: the characteristic-2 obstruction, the classification of
// self-dual MRD codes in k^{2x2}, the constructive factorization of symmetric
// square-determinant matrices as X X^T, the equivalent-to-self-dual criterion
// C-dual = A C B, and the explicit self-dualization of G_{n/2,Gamma}, which
// succeeds exactly when n = 2 (mod 4) and q = 3 (mod 4).

#include <variant>

#include "mrdkit/gabidulin.hpp"

namespace mrdkit {

// For q even and C self-orthogonal: the all-ones matrix J, which lies in
// C-dual and has rank 1, so d(C-dual) = 1 and no self-dual MRD code exists.
// nullopt when q is odd or C is not self-orthogonal.
std::optional<MatFq> char2_obstruction(const RankMetricCode& c);

// All self-dual MRD codes in k^{2x2}, q odd: candidates come from the unique
// basis pair [[1,0],[a,b]], [[0,1],[c,d]] with a^2+b^2 = -1 and
// (c,d) in {(-b,a),(b,-a)}; every candidate is self-dual, and the MRD ones
// survive exactly when q = 3 (mod 4). Deterministic (a,b,choice) order.
std::vector<RankMetricCode> classify_2x2(const FieldCtx& ctx);

// X with X X^T = M, for M symmetric invertible with square determinant over
// odd q. Symmetric Gaussian congruence-diagonalization, then diagonal repair:
// square entries scale to 1, the (evenly many) nonsquare entries are fixed in
// pairs via x^2 + y^2 = d^{-1}. Errors: char_two, not_symmetric, singular,
// non_square_det.
MatFq factor_symmetric(const MatFq& m);

// True iff A_sym and B_sym are symmetric with nonzero square determinant and
// dual(C) = A_sym C B_sym (canonical-form equality).
bool eqsd_check(const RankMetricCode& c, const MatFq& a_sym, const MatFq& b_sym);

// Witness that G_{n/2,Gamma} is properly equivalent to a self-dual code.
struct SelfDualCertificate {
    u64 i = 0, h = 0;  // X = T A^{n/2} A^j S^i, Y = S^h A^{-j} T^{-1}
    unsigned j = 0;
    MatFq A_sym, B_sym;   // = X and Y above; symmetric, square determinant
    MatFq P, Q;           // A_sym = P^T P, B_sym = Q Q^T
    RankMetricCode code;  // P G_{n/2,Gamma} Q, self-dual
};

struct Impossible {
    std::string reason;        // the violated congruence / obstruction
    bool scanned = false;      // true when the exhaustive (i,h,j) scan ran
    u64 triples = 0;           // size of the scanned triple space
    // per j: number of i with X_{i,j} symmetric square-det, same for h/Y.
    std::vector<std::pair<u64, u64>> per_j_valid;
};

using SelfDualizeResult = std::variant<SelfDualCertificate, Impossible>;

// For n = 2 (mod 4), q = 3 (mod 4): certificate built from the smallest valid
// triple (i,h,j) = (q^{n/2}+1, 1, 0). Otherwise Impossible, with an
// exhaustive scan over all (i,h,j) as evidence whenever it fits the budget.
// Errors: odd_n.
SelfDualizeResult gabisd_selfdualize(const GabidulinCtx& g, const WorkBudget& budget = {});

// (det X_{i,j} square?, det Y_{h,j} square?) computed both directly and via
// the closed form det(X) square iff (-1)^{n/2+j} delta^i nonsquare,
// det(Y) square iff (-1)^j delta^h nonsquare; the two routes are asserted
// equal. Errors: odd_n, char_two.
std::pair<bool, bool> determinant_square_test_xy(const GabidulinCtx& g, u64 i, u64 h, unsigned j);

// X_{i,j} = T A^{n/2} A^j S^i and Y_{h,j} = S^h A^{-j} T^{-1}.
MatFq sandwich_x(const GabidulinCtx& g, u64 i, unsigned j);
MatFq sandwich_y(const GabidulinCtx& g, u64 h, unsigned j);

}  // namespace mrdkit

#endif
