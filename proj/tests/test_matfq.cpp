#include <doctest.h>

#include <random>

#include "mrdkit/matfq.hpp"

using namespace mrdkit;

namespace {

MatFq random_mat(const FieldCtx& ctx, int r, int c, std::mt19937_64& rng) {
    MatFq m(ctx, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = rng() % ctx.q();
    return m;
}

MatFq random_invertible(const FieldCtx& ctx, int n, std::mt19937_64& rng) {
    for (;;) {
        MatFq m = random_mat(ctx, n, n, rng);
        if (m.det() != 0) return m;
    }
}

MatFq unit(const FieldCtx& ctx, int m, int n, int i, int j) {
    MatFq e(ctx, m, n);
    e(i, j) = 1;
    return e;
}

}  // namespace

TEST_CASE("rank") {
    auto ctx = FieldCtx::create(3, 1, 2);
    CHECK(all_ones(*ctx, 3, 2).rank() == 1);
    CHECK(MatFq(*ctx, 2, 2).rank() == 0);
    CHECK(MatFq::identity(*ctx, 3).rank() == 3);

    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
        MatFq m = random_mat(*ctx, 3, 2, rng);
        MatFq x = random_invertible(*ctx, 3, rng);
        MatFq y = random_invertible(*ctx, 2, rng);
        CHECK((x * m * y).rank() == m.rank());
    }
}

TEST_CASE("inner product") {
    auto ctx = FieldCtx::create(3, 1, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int l = 0; l < 2; ++l)
                for (int h = 0; h < 2; ++h)
                    CHECK(inner(unit(*ctx, 2, 2, i, j), unit(*ctx, 2, 2, l, h)) ==
                          ((i == l && j == h) ? 1 : 0));

    std::mt19937_64 rng(6);
    MatFq a = random_mat(*ctx, 2, 3, rng);
    CHECK(inner(a, MatFq(*ctx, 2, 3)) == 0);
    u64 sum = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) sum = ctx->add(sum, ctx->mul(a(i, j), a(i, j)));
    CHECK(inner(a, a) == sum);
    // trace(A B^T) route
    CHECK(inner(a, a) == (a * a.transposed()).trace());

    for (int t = 0; t < 30; ++t) {
        MatFq m = random_mat(*ctx, 2, 2, rng);
        MatFq b = random_mat(*ctx, 2, 2, rng);
        MatFq x = random_invertible(*ctx, 2, rng);
        MatFq y = random_invertible(*ctx, 2, rng);
        CHECK(inner(m, b) == inner(b, m));
        CHECK(inner(x * m * y, b) == inner(m, x.transposed() * b * y.transposed()));
        CHECK((x * m * x.inverse()).trace() == m.trace());
    }
    CHECK_THROWS_AS(inner(a, MatFq(*ctx, 3, 2)), MrdError);
}

TEST_CASE("determinant, inverse, rref, kernel") {
    auto ctx = FieldCtx::create(5, 1, 1);
    CHECK(MatFq::identity(*ctx, 4).det() == 1);

    std::mt19937_64 rng(7);
    for (int t = 0; t < 40; ++t) {
        MatFq m = random_mat(*ctx, 2, 2, rng);
        const u64 oracle = ctx->sub(ctx->mul(m(0, 0), m(1, 1)), ctx->mul(m(0, 1), m(1, 0)));
        CHECK(m.det() == oracle);
    }
    for (int t = 0; t < 20; ++t) {
        MatFq m = random_invertible(*ctx, 3, rng);
        CHECK(m * m.inverse() == MatFq::identity(*ctx, 3));
        CHECK(m.inverse() * m == MatFq::identity(*ctx, 3));
    }
    CHECK_THROWS_AS(all_ones(*ctx, 2, 2).inverse(), MrdError);

    for (int t = 0; t < 20; ++t) {
        MatFq m = random_mat(*ctx, 3, 5, rng);
        auto [r, pivots] = m.rref();
        auto [r2, pivots2] = r.rref();
        CHECK(r == r2);
        CHECK(pivots == pivots2);
        MatFq k = m.kernel();
        CHECK(k.rows() == 5 - int(pivots.size()));
        for (int v = 0; v < k.rows(); ++v) {
            MatFq col(*ctx, 5, 1);
            for (int j = 0; j < 5; ++j) col(j, 0) = k(v, j);
            CHECK((m * col).is_zero());
        }
    }
    // kernel of the zero map is the full standard basis
    CHECK(MatFq(*ctx, 2, 4).kernel() == MatFq::identity(*ctx, 4));
}

TEST_CASE("square determinant test") {
    auto f3 = FieldCtx::create(3, 1, 1);
    CHECK(is_square_det(MatFq::identity(*f3, 2)));
    CHECK_FALSE(is_square_det(MatFq::from_rows(*f3, 2, 2, {2, 0, 0, 1})));  // det 2 nonsquare
    CHECK(is_square_det(MatFq::from_rows(*f3, 2, 2, {2, 0, 0, 2})));        // det 4 = 1

    CHECK_THROWS_WITH_AS(is_square_det(MatFq(*f3, 2, 2)), doctest::Contains("SingularInput"), MrdError);
    auto f2 = FieldCtx::create(2, 1, 1);
    CHECK_THROWS_WITH_AS(is_square_det(MatFq::identity(*f2, 2)), doctest::Contains("CharTwo"), MrdError);
}

TEST_CASE("matrix power and arithmetic over an extension base field") {
    auto f4 = FieldCtx::create(2, 2, 1);  // q = 4
    std::mt19937_64 rng(8);
    MatFq m = random_invertible(*f4, 2, rng);
    CHECK(m.pow(0) == MatFq::identity(*f4, 2));
    CHECK(m.pow(3) == m * m * m);
    CHECK((m + (-m)).is_zero());
    CHECK(m.scaled(0).is_zero());
}
