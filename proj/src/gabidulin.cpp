#include "mrdkit/gabidulin.hpp"

namespace mrdkit {

MatFq coordinate_matrix(const Basis& b) {
    const FieldCtx& F = b.ctx();
    const unsigned n = F.n();
    if (b.elements.size() != n) throw MrdError(errc::bad_argument, "basis has wrong size");
    MatFq m(F, int(n), int(n));
    for (unsigned j = 0; j < n; ++j) {
        const auto& v = b.elements[j].kvec();
        for (unsigned i = 0; i < n; ++i) m(int(i), int(j)) = v[i];
    }
    return m;
}

MatFq epsilon(const Basis& b, const std::vector<FieldElem>& v) {
    const FieldCtx& F = b.ctx();
    const unsigned n = F.n();
    if (v.size() != n) throw MrdError(errc::bad_argument, "epsilon needs n elements");
    MatFq rhs(F, int(n), int(n));
    for (unsigned j = 0; j < n; ++j) {
        const auto& w = v[j].kvec();
        for (unsigned i = 0; i < n; ++i) rhs(int(i), int(j)) = w[i];
    }
    return coordinate_matrix(b).inverse() * rhs;
}

MatFq trace_gram(const Basis& b) {
    const FieldCtx& F = b.ctx();
    const unsigned n = F.n();
    MatFq g(F, int(n), int(n));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            g(int(i), int(j)) = F.k_trace(F.k_mul(b.elements[i].kvec(), b.elements[j].kvec()));
    return g;
}

namespace {

std::vector<FieldElem> scale_basis(const FieldElem& alpha, const Basis& b) {
    std::vector<FieldElem> out;
    out.reserve(b.elements.size());
    for (const FieldElem& e : b.elements) out.push_back(alpha * e);
    return out;
}

void structural(bool ok, const char* what) {
    if (!ok) throw MrdError(errc::internal, std::string("structural check failed: ") + what);
}

}  // namespace

GabidulinCtx::GabidulinCtx(std::shared_ptr<const FieldCtx> ctx, Basis gamma, Basis gamma_dual,
                           FieldElem sigma, MatFq gram, MatFq shift, MatFq singer, u64 delta)
    : ctx_(std::move(ctx)),
      gamma_(std::move(gamma)),
      gamma_dual_(std::move(gamma_dual)),
      sigma_(std::move(sigma)),
      gram_(std::move(gram)),
      shift_(std::move(shift)),
      singer_(std::move(singer)),
      delta_(delta),
      gamma_coords_inv_(coordinate_matrix(gamma_).inverse()) {}

GabidulinCtx GabidulinCtx::make(std::shared_ptr<const FieldCtx> ctx) {
    const FieldCtx& F = *ctx;
    const unsigned n = F.n();

    Basis gamma = find_normal_basis(F);
    Basis gamma_dual = dual_basis(gamma);

    MatFq gram = trace_gram(gamma);
    structural(gram.is_symmetric(), "gram matrix symmetric");
    structural(gram.det() != 0, "gram matrix invertible");
    structural(gram == epsilon(gamma_dual, gamma.elements), "gram = coordinates of Gamma in Gamma*");

    // frobenius image of the whole basis
    std::vector<FieldElem> gamma1;
    for (const FieldElem& e : gamma.elements) gamma1.push_back(frobenius(e, 1));
    MatFq shift = epsilon(gamma, gamma1);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            structural(shift(int(i), int(j)) == (i == (j + 1) % n ? 1u : 0u), "shift is the n-cycle");
    structural(shift.pow(n) == MatFq::identity(F, int(n)), "shift has order n");
    structural(shift * gram == gram * shift, "shift commutes with gram");

    FieldElem sigma = primitive_element(F);
    MatFq singer = epsilon(gamma, scale_basis(sigma, gamma));
    structural(shift * singer * shift.inverse() == singer.pow(F.q()),
               "shift conjugates the singer matrix to its q-th power");
    const u64 group = F.q_pow_n() - 1;
    structural(singer.pow(group) == MatFq::identity(F, int(n)), "singer order divides q^n - 1");
    for (auto [r, mult] : F.factors_qn_minus_1()) {
        (void)mult;
        structural(singer.pow(group / r) != MatFq::identity(F, int(n)), "singer order is exactly q^n - 1");
    }
    const u64 delta = singer.det();
    structural(F.pow(delta, F.q() - 1) == 1, "det(singer) order divides q - 1");
    for (auto [r, mult] : F.factors_q_minus_1()) {
        (void)mult;
        structural(F.pow(delta, (F.q() - 1) / r) != 1, "det(singer) generates F_q^x");
    }

    structural(shift.transposed() == shift.inverse(), "shift transpose = shift inverse");
    if (n % 2 == 0) {
        structural(shift.det() == F.neg(1), "det(shift) = -1 for even n");
        if (F.p() != 2) structural(!F.is_square(gram.det()), "det(gram) nonsquare for even n, odd q");
    }

    return GabidulinCtx(std::move(ctx), std::move(gamma), std::move(gamma_dual), std::move(sigma),
                        std::move(gram), std::move(shift), std::move(singer), delta);
}

MatFq GabidulinCtx::k_matrix(const FieldElem& alpha) const {
    const FieldCtx& F = *ctx_;
    const unsigned n = F.n();
    MatFq rhs(F, int(n), int(n));
    const auto& a = alpha.kvec();
    for (unsigned j = 0; j < n; ++j) {
        const auto prod = F.k_mul(a, gamma_.elements[j].kvec());
        for (unsigned i = 0; i < n; ++i) rhs(int(i), int(j)) = prod[i];
    }
    return gamma_coords_inv_ * rhs;
}

RankMetricCode gab_code(const GabidulinCtx& g, unsigned ell) {
    const FieldCtx& F = g.field();
    const unsigned n = F.n();
    if (ell < 1 || ell > n) throw MrdError(errc::bad_ell, "ell must satisfy 1 <= ell <= n");

    // route 1: epsilon(gamma_i Gamma^[j]) literally
    std::vector<MatFq> gens;
    gens.reserve(size_t(n) * ell);
    for (unsigned i = 0; i < n; ++i) {
        const auto& gi = g.gamma().elements[i].kvec();
        for (unsigned j = 0; j < ell; ++j) {
            std::vector<FieldElem> v;
            v.reserve(n);
            for (unsigned t = 0; t < n; ++t) {
                const auto& conj = g.gamma().elements[(j + t) % n].kvec();
                v.push_back(F.elem_k(F.k_mul(gi, conj)));
            }
            gens.push_back(epsilon(g.gamma(), v));
        }
    }
    RankMetricCode code = RankMetricCode::from_generators(F, int(n), int(n), gens);

    // route 2: layer decomposition K + KA + ... + KA^{ell-1}
    std::vector<MatFq> layer_gens;
    layer_gens.reserve(size_t(n) * ell);
    MatFq apow = MatFq::identity(F, int(n));
    for (unsigned j = 0; j < ell; ++j) {
        for (unsigned i = 0; i < n; ++i) layer_gens.push_back(g.k_matrix(g.gamma().elements[i]) * apow);
        apow = apow * g.shift();
    }
    RankMetricCode layered = RankMetricCode::from_generators(F, int(n), int(n), layer_gens);
    structural(code == layered, "the two generating descriptions span the same code");
    structural(code.dim() == int(n * ell), "G_{ell,Gamma} has dimension n*ell");
    return code;
}

bool verify_basechange(const GabidulinCtx& g, const FieldElem& alpha) {
    const MatFq b = g.k_matrix(alpha);
    const MatFq bt = b.transposed();
    if (bt != epsilon(g.gamma_dual(), scale_basis(alpha, g.gamma_dual()))) return false;
    return bt == g.gram() * b * g.gram().inverse();
}

bool verify_trace_vanishing(const GabidulinCtx& g, const WorkBudget& budget) {
    const FieldCtx& F = g.field();
    const unsigned n = F.n();
    const u64 group = F.q_pow_n() - 1;
    const bool exhaustive = group <= budget.max_codewords;
    const u64 step = exhaustive ? 1 : std::max<u64>(1, group / 64);

    std::vector<MatFq> apows;
    MatFq ap = MatFq::identity(F, int(n));
    for (unsigned i = 0; i < n; ++i) {
        apows.push_back(ap);
        ap = ap * g.shift();
    }
    MatFq spow = MatFq::identity(F, int(n));
    const MatFq sstep = exhaustive ? g.singer() : g.singer().pow(step);
    for (u64 m = 0; m < group; m += step) {
        for (unsigned i = 1; i < n; ++i)
            if ((spow * apows[i]).trace() != 0) return false;
        spow = spow * sstep;
    }
    return true;
}

std::vector<EquivMap> aut_generators(const GabidulinCtx& g, unsigned ell) {
    const FieldCtx& F = g.field();
    const unsigned n = F.n();
    if (ell < 1 || ell >= n) throw MrdError(errc::bad_ell, "ell must satisfy 0 < ell < n");
    const MatFq id = MatFq::identity(F, int(n));
    std::vector<EquivMap> gens;
    gens.push_back(EquivMap::proper(g.singer(), id));
    gens.push_back(EquivMap::proper(id, g.singer()));
    gens.push_back(EquivMap::proper(g.shift(), g.shift().inverse()));
    gens.push_back(EquivMap::improper(g.gram().inverse(), g.gram() * g.shift().pow(ell - 1)));

    const RankMetricCode code = gab_code(g, ell);
    for (const EquivMap& f : gens) structural(apply(f, code) == code, "generator fixes the code");
    return gens;
}

u64 aut_order(const GabidulinCtx& g, unsigned ell) {
    const FieldCtx& F = g.field();
    if (ell < 1 || ell >= F.n()) throw MrdError(errc::bad_ell, "ell must satisfy 0 < ell < n");
    // 2 n (q^n - 1)^2 / (q - 1), with (q^n-1)/(q-1) = 1 + q + ... + q^{n-1}
    unsigned __int128 t = 0, term = 1;
    for (unsigned i = 0; i < F.n(); ++i) {
        t += term;
        term *= F.q();
    }
    unsigned __int128 total = 2 * (unsigned __int128)F.n() * (F.q_pow_n() - 1) * t;
    if (total > (unsigned __int128)~u64(0)) throw MrdError(errc::overflow, "automorphism order exceeds 2^64");
    return u64(total);
}

}  // namespace mrdkit
