#include <doctest.h>

#include <random>

#include "mrdkit/gabidulin.hpp"

using namespace mrdkit;

namespace {

// test-local rank of a small integer matrix mod p
int naive_rank_mod(std::vector<std::vector<u64>> m, u64 p) {
    const int rows = int(m.size()), cols = int(m[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] % p != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] % p == 0) continue;
            // r <- r * m[rank][c] - m[r][c] * rank-row
            const u64 a = m[rank][c] % p, b = m[r][c] % p;
            for (int j = 0; j < cols; ++j) m[r][j] = ((m[r][j] * a) % p + p * p - (m[rank][j] * b) % p) % p;
        }
        ++rank;
    }
    return rank;
}

GabidulinCtx make32() { return GabidulinCtx::make(FieldCtx::create(3, 1, 2)); }

}  // namespace

TEST_CASE("structural matrices at q = 3, n = 2 match hand computation") {
    GabidulinCtx g = make32();
    const FieldCtx& F = g.field();

    CHECK(g.gamma().elements[0] == F.elem_k({1, 1}));
    CHECK(g.gamma().elements[1] == F.elem_k({1, 2}));
    CHECK(g.sigma() == F.elem_k({1, 1}));

    CHECK(g.gram() == MatFq::from_rows(F, 2, 2, {0, 1, 1, 0}));
    CHECK(g.shift() == MatFq::from_rows(F, 2, 2, {0, 1, 1, 0}));
    CHECK(g.singer() == MatFq::from_rows(F, 2, 2, {1, 1, 2, 1}));
    CHECK(g.singer_det() == 2);

    CHECK(g.shift().det() == 2);            // -1
    CHECK_FALSE(F.is_square(g.gram().det()));  // det(T) = -1 nonsquare
}

TEST_CASE("epsilon coordinates") {
    GabidulinCtx g = make32();
    const FieldCtx& F = g.field();

    CHECK(epsilon(g.gamma(), g.gamma().elements) == MatFq::identity(F, 2));
    std::vector<FieldElem> conj{frobenius(g.gamma().elements[0], 1), frobenius(g.gamma().elements[1], 1)};
    CHECK(epsilon(g.gamma(), conj) == g.shift());
    CHECK(epsilon(g.gamma_dual(), g.gamma().elements) == g.gram());
}

TEST_CASE("gabidulin codes") {
    GabidulinCtx g = make32();
    const FieldCtx& F = g.field();

    RankMetricCode full = gab_code(g, 2);
    CHECK(full.dim() == 4);

    RankMetricCode kalg = gab_code(g, 1);
    CHECK(kalg.dim() == 2);
    CHECK(kalg.contains(MatFq::identity(F, 2)));
    // closed under multiplication
    CHECK(kalg.contains(g.singer() * g.singer()));
    CHECK(kalg.contains(g.k_matrix(F.elem_k({2, 1})) * g.k_matrix(F.elem_k({0, 2}))));

    CHECK_THROWS_WITH_AS(gab_code(g, 0), doctest::Contains("BadEll"), MrdError);
    CHECK_THROWS_AS(gab_code(g, 3), MrdError);

    // independent distance oracle: walk all 80 nonzero codewords, rank mod 3
    int best = 3;
    for (u64 c0 = 0; c0 < 3; ++c0)
        for (u64 c1 = 0; c1 < 3; ++c1) {
            if (c0 == 0 && c1 == 0) continue;
            MatFq w = kalg.generators()[0].scaled(c0) + kalg.generators()[1].scaled(c1);
            std::vector<std::vector<u64>> raw{{w(0, 0), w(0, 1)}, {w(1, 0), w(1, 1)}};
            best = std::min(best, naive_rank_mod(raw, 3));
        }
    CHECK(best == 2);
    CHECK(min_distance(kalg) == 2);
    CHECK(is_mrd(kalg));
    CHECK(is_mrd(dual(kalg)));  // the dual of an MRD code is MRD
}

TEST_CASE("base change identity") {
    GabidulinCtx g = make32();
    const FieldCtx& F = g.field();
    CHECK(verify_basechange(g, F.one_k()));
    CHECK(verify_basechange(g, g.sigma()));
    // S^T = T S T^{-1} directly
    CHECK(g.singer().transposed() == g.gram() * g.singer() * g.gram().inverse());
    for (u64 idx = 1; idx < 9; ++idx) CHECK(verify_basechange(g, F.elem_k_from_index(idx)));

    GabidulinCtx g34 = GabidulinCtx::make(FieldCtx::create(3, 1, 4));
    std::mt19937_64 rng(20);
    for (int t = 0; t < 10; ++t)
        CHECK(verify_basechange(g34, g34.field().elem_k_from_index(1 + rng() % 80)));
}

TEST_CASE("trace vanishing on shifted layers") {
    GabidulinCtx g = make32();
    CHECK(g.shift().trace() == 0);
    CHECK(verify_trace_vanishing(g));
    // non-example guard: i = 0 gives trace(I) = n != 0 when p does not divide n
    CHECK(MatFq::identity(g.field(), 2).trace() == 2);
}

TEST_CASE("layer structure") {
    GabidulinCtx g = make32();
    const FieldCtx& F = g.field();
    RankMetricCode kalg = gab_code(g, 1);

    // K and KA intersect trivially and together span everything
    std::vector<MatFq> stacked = kalg.generators();
    for (const MatFq& b : kalg.generators()) stacked.push_back(b * g.shift());
    CHECK(RankMetricCode::from_generators(F, 2, 2, stacked).dim() == 4);

    // A B = B^q A for all B in the field algebra
    for (u64 idx = 0; idx < 9; ++idx) {
        MatFq b = g.k_matrix(F.elem_k_from_index(idx));
        CHECK(g.shift() * b == b.pow(3) * g.shift());
    }
}

TEST_CASE("automorphism generators and order") {
    GabidulinCtx g = make32();
    const auto gens = aut_generators(g, 1);
    REQUIRE(gens.size() == 4);
    RankMetricCode code = gab_code(g, 1);
    for (const auto& f : gens) CHECK(apply(f, code) == code);
    CHECK(gens[3].kind() == EquivMap::Kind::improper);

    CHECK(aut_order(g, 1) == 128);  // 2*2*8*8/2
    CHECK_THROWS_AS(aut_order(g, 2), MrdError);

    // exhaustive: all equivalences of the code onto itself
    auto maps = brute_equivalences(code, code, true);
    CHECK(maps.size() == 128);

    GabidulinCtx g52 = GabidulinCtx::make(FieldCtx::create(5, 1, 2));
    CHECK(aut_order(g52, 1) == 576);  // 2*2*24*24/4

    GabidulinCtx g34 = GabidulinCtx::make(FieldCtx::create(3, 1, 4));
    CHECK(aut_order(g34, 2) == 25600);  // 2*4*80*80/2
    const auto gens34 = aut_generators(g34, 2);
    RankMetricCode code34 = gab_code(g34, 2);
    for (const auto& f : gens34) CHECK(apply(f, code34) == code34);
}

TEST_CASE("improper generator swaps layers") {
    GabidulinCtx g = GabidulinCtx::make(FieldCtx::create(3, 1, 4));
    const FieldCtx& F = g.field();
    const unsigned ell = 2;
    const auto gens = aut_generators(g, ell);
    const EquivMap& tau = gens.back();
    RankMetricCode kalg = gab_code(g, 1);
    MatFq apow = MatFq::identity(F, 4);
    for (unsigned j = 0; j < ell; ++j) {
        std::vector<MatFq> image, target;
        for (const MatFq& b : kalg.generators()) {
            image.push_back(tau(b * apow));
            target.push_back(b * g.shift().pow(ell - 1 - j));
        }
        CHECK(RankMetricCode::from_generators(F, 4, 4, image) ==
              RankMetricCode::from_generators(F, 4, 4, target));
        apow = apow * g.shift();
    }
}

TEST_CASE("symmetry laws for gram and singer powers at (3,2)") {
    GabidulinCtx g = make32();
    const MatFq ginv = g.gram().inverse();
    MatFq spow = MatFq::identity(g.field(), 2);
    for (u64 j = 0; j < 8; ++j) {
        CHECK((g.gram() * spow).is_symmetric());
        CHECK((spow * ginv).is_symmetric());
        spow = spow * g.singer();
    }
    // T A^j S^i symmetric iff j = 0, or j = n/2 = 1 and 4 | i
    for (unsigned j = 0; j < 2; ++j) {
        MatFq left = g.gram() * g.shift().pow(j);
        for (u64 i = 0; i < 8; ++i) {
            const bool expected = j == 0 || i % 4 == 0;
            CHECK(left.is_symmetric() == expected);
            left = left * g.singer();
        }
    }
}

TEST_CASE("dual code in sandwich form") {
    for (auto [q, n] : {std::pair<u64, unsigned>{3, 2}, {7, 2}}) {
        GabidulinCtx g = GabidulinCtx::make(FieldCtx::create(q, 1, n));
        RankMetricCode code = gab_code(g, n / 2);
        const MatFq left = g.gram() * g.shift().pow(n / 2);
        const MatFq right = g.gram().inverse();
        std::vector<MatFq> gens;
        for (const MatFq& b : code.generators()) gens.push_back(left * b * right);
        CHECK(RankMetricCode::from_generators(g.field(), int(n), int(n), gens) == dual(code));
    }
}

TEST_CASE("gram matrix and dual basis over random bases") {
    for (auto [p, e, n] : {std::tuple<u64, unsigned, unsigned>{3, 1, 2}, {2, 2, 2}, {3, 1, 3}}) {
        auto ctx = FieldCtx::create(p, e, n);
        std::mt19937_64 rng(40 + n);
        int made = 0;
        while (made < 15) {
            std::vector<FieldElem> elems;
            for (unsigned i = 0; i < n; ++i)
                elems.push_back(ctx->elem_k_from_index(rng() % ctx->q_pow_n()));
            Basis b{elems, Basis::Kind::arbitrary};
            if (coordinate_matrix(b).rank() != int(n)) continue;
            ++made;
            MatFq gram = trace_gram(b);
            CHECK(gram.is_symmetric());
            CHECK(gram.det() != 0);
            Basis d = dual_basis(b);
            Basis dd = dual_basis(d);
            for (unsigned i = 0; i < n; ++i) CHECK(dd.elements[i] == b.elements[i]);
        }
    }
}

TEST_CASE("scalar matrices sit inside the singer group") {
    GabidulinCtx g = GabidulinCtx::make(FieldCtx::create(3, 1, 4));
    const FieldCtx& F = g.field();
    // S^((q^n-1)/(q-1)) is scalar and its entry generates F_q^x
    const MatFq m = g.singer().pow((F.q_pow_n() - 1) / (F.q() - 1));
    const u64 c = m(0, 0);
    CHECK(m == MatFq::identity(F, 4).scaled(c));
    CHECK(c != 0);
    CHECK(F.pow(c, F.q() - 1) == 1);
    for (auto [r, mult] : F.factors_q_minus_1()) {
        (void)mult;
        CHECK(F.pow(c, (F.q() - 1) / r) != 1);
    }
}

TEST_CASE("every predicted automorphism pair fixes the code") {
    GabidulinCtx g = make32();
    const FieldCtx& F = g.field();
    RankMetricCode code = gab_code(g, 1);
    // pairs (A^j S^i, A^{-j} S^h) over all j, i, h
    MatFq apow = MatFq::identity(F, 2);
    for (unsigned j = 0; j < 2; ++j) {
        const MatFq aneg = apow.inverse();
        for (u64 i = 0; i < 8; ++i)
            for (u64 h = 0; h < 8; ++h) {
                EquivMap f = EquivMap::proper(apow * g.singer().pow(i), aneg * g.singer().pow(h));
                CHECK(apply(f, code) == code);
            }
        apow = apow * g.shift();
    }
}

TEST_CASE("normalizer of the field algebra units at (3,2)") {
    GabidulinCtx g = make32();
    const FieldCtx& F = g.field();
    std::vector<MatFq> units;
    for (u64 idx = 1; idx < 9; ++idx) units.push_back(g.k_matrix(F.elem_k_from_index(idx)));
    auto member = [&](const std::vector<MatFq>& set, const MatFq& m) {
        for (const auto& u : set)
            if (u == m) return true;
        return false;
    };
    std::vector<MatFq> expected;
    for (const auto& u : units) {
        expected.push_back(u);
        expected.push_back(g.shift() * u);
    }
    for (const MatFq& x : all_invertible(F, 2)) {
        bool normalizes = true;
        const MatFq xi = x.inverse();
        for (const auto& u : units)
            if (!member(units, x * u * xi)) {
                normalizes = false;
                break;
            }
        CHECK(normalizes == member(expected, x));
    }
}
