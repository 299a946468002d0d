#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>

#include "sphericity/errors.hpp"
#include "sphericity/power.hpp"

using namespace sphericity;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SigmaFunctionals two_point(double delta) {
    SigmaSpec s{TwoPointDiagonal{0.5, 1.0, delta}, 0};
    return functionals(s);
}

}  // namespace

TEST_CASE("functionals of the scaled identity") {
    const auto f = functionals(SigmaSpec{ScaledIdentity{1.0}, 0});
    CHECK(f.gamma == 1.0);
    CHECK(f.theta == 1.0);
    CHECK(f.omega == 1.0);
}

TEST_CASE("functionals of the paper's power scenarios") {
    const auto p1 = two_point(0.5);  // half at 0.5, half at 1
    CHECK_THAT(p1.gamma, WithinAbs(0.75, 1e-15));
    CHECK_THAT(p1.theta, WithinAbs(0.625, 1e-15));
    CHECK_THAT(p1.omega, WithinAbs(0.625, 1e-15));

    const auto p2 = two_point(0.75);  // quarter at 0.5, three quarters at 1
    CHECK_THAT(p2.gamma, WithinAbs(0.875, 1e-15));
    CHECK_THAT(p2.theta, WithinAbs(0.8125, 1e-15));
    CHECK_THAT(p2.omega, WithinAbs(0.8125, 1e-15));
}

TEST_CASE("explicit diagonal and SPD forms agree with the two-point shortcut") {
    std::vector<double> diag(8, 0.5);
    for (int i = 0; i < 4; ++i) diag[std::size_t(i)] = 1.0;
    const auto fd = functionals(SigmaSpec{ExplicitDiagonal{diag}, 8});
    const auto ft = two_point(0.5);
    CHECK_THAT(fd.gamma, WithinAbs(ft.gamma, 1e-15));
    CHECK_THAT(fd.theta, WithinAbs(ft.theta, 1e-15));

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(8, 8);
    for (int i = 0; i < 8; ++i) m(i, i) = diag[std::size_t(i)];
    const auto fs = functionals(SigmaSpec{ExplicitSPD{m}, 8});
    CHECK_THAT(fs.omega, WithinAbs(ft.omega, 1e-15));
}

TEST_CASE("off-diagonal mass moves theta above omega") {
    Eigen::MatrixXd m(3, 3);
    m << 2.0, 0.3, 0.1, 0.3, 1.5, 0.2, 0.1, 0.2, 1.0;
    const auto f = functionals(SigmaSpec{ExplicitSPD{m}, 3});
    CHECK(f.theta > f.omega);
    CHECK(f.gamma * f.gamma <= f.theta + 1e-12);
}

TEST_CASE("Jensen guard: gamma^2 <= theta for every spec") {
    for (double d = 0.0; d <= 1.0; d += 0.1) {
        const auto f = two_point(d);
        CHECK(f.gamma * f.gamma <= f.theta + 1e-12);
    }
}

TEST_CASE("non-positive diagonals are rejected") {
    CHECK_THROWS_AS(functionals(SigmaSpec{ScaledIdentity{0.0}, 0}), Error);
    CHECK_THROWS_AS(functionals(SigmaSpec{ExplicitDiagonal{{1.0, -0.5}}, 2}), Error);
}

TEST_CASE("John alternative parameters") {
    SECTION("null case reduces to the ultra-dimensional null law") {
        for (double s2 : {0.5, 1.0, 2.0}) {
            const auto f = functionals(SigmaSpec{ScaledIdentity{s2}, 0});
            const auto a3 = john_alt_params(f, 3.0, 64, 2400);
            CHECK_THAT(a3.center, WithinAbs(0.0, 1e-12));
            CHECK_THAT(a3.mean, WithinAbs(1.0, 1e-12));  // nu4 - 2
            CHECK_THAT(a3.sd, WithinAbs(2.0, 1e-12));
        }
    }
    SECTION("power-one scenario") {
        const auto f = two_point(0.5);
        const auto a = john_alt_params(f, 3.0, 64, 2400);
        CHECK_THAT(a.center, WithinRel(64.0 / 9.0, 1e-12));
        CHECK_THAT(a.mean, WithinRel(10.0 / 9.0, 1e-12));
        CHECK_THAT(a.sd, WithinRel(20.0 / 9.0, 1e-12));
        const auto a45 = john_alt_params(f, 4.5, 64, 2400);
        CHECK_THAT(a45.mean, WithinRel(25.0 / 9.0, 1e-12));
    }
}

TEST_CASE("QLRT alternative parameters") {
    SECTION("null case recovers the n/2 + n^2/(6p) centering") {
        const auto f = functionals(SigmaSpec{ScaledIdentity{1.0}, 0});
        const auto a = qlrt_alt_params(f, 4.5, 64, 2400);
        CHECK_THAT(a.center, WithinRel(32.0 + 4096.0 / 14400.0, 1e-12));
        CHECK_THAT(a.mean, WithinRel(1.25, 1e-12));  // (nu4-2)/2
        CHECK_THAT(a.sd, WithinAbs(1.0, 1e-12));
    }
    SECTION("power-one centering at (2400, 64)") {
        const auto f = two_point(0.5);
        const auto a = qlrt_alt_params(f, 3.0, 64, 2400);
        CHECK_THAT(a.center, WithinAbs(35.94276289629374, 1e-10));
    }
}

TEST_CASE("regime warning flags n^3/p above 1000") {
    const auto f = two_point(0.5);
    CHECK(john_alt_params(f, 3.0, 64, 100).regime_warning);
    CHECK_FALSE(john_alt_params(f, 3.0, 64, 2400).regime_warning);  // n^3/p ~ 109
    CHECK(qlrt_alt_params(f, 3.0, 64, 100).regime_warning);
}

TEST_CASE("null reduction: both power formulas return alpha exactly") {
    for (double s2 : {0.25, 1.0, 4.0}) {
        const auto f = functionals(SigmaSpec{ScaledIdentity{s2}, 0});
        for (double alpha : {0.01, 0.05, 0.1}) {
            CHECK_THAT(john_power(f, 3.0, 64, 2400, alpha), WithinAbs(alpha, 1e-12));
            CHECK_THAT(john_power(f, 4.5, 64, 2400, alpha), WithinAbs(alpha, 1e-12));
            CHECK_THAT(qlrt_power(f, 3.0, 64, 2400, alpha), WithinAbs(alpha, 1e-12));
            CHECK_THAT(qlrt_power(f, 4.5, 256, 320, alpha), WithinAbs(alpha, 1e-12));
        }
    }
}

// Regression values from direct evaluation of the asymptotic power
// formulas at (p,n) = (2400,64), alpha = 0.05.
TEST_CASE("power formula regression values") {
    struct Row {
        double delta, john3, qlrt3, john45, qlrt45;
    };
    const Row rows[] = {
        {0.1, 0.7639359649, 0.7827183175, 0.7796299171, 0.7976706005},
        {0.2, 0.9616057457, 0.9687067945, 0.9674544364, 0.9736345605},
        {0.3, 0.9833749897, 0.9871996164, 0.9865148013, 0.9896965319},
        {0.4, 0.9812390448, 0.9854354596, 0.9846854260, 0.9881992014},
        {0.5, 0.9616057457, 0.9687067945, 0.9674544364, 0.9736345605},
    };
    for (const auto& r : rows) {
        const auto f = two_point(r.delta);
        CHECK_THAT(john_power(f, 3.0, 64, 2400, 0.05), WithinAbs(r.john3, 1e-9));
        CHECK_THAT(qlrt_power(f, 3.0, 64, 2400, 0.05), WithinAbs(r.qlrt3, 1e-9));
        CHECK_THAT(john_power(f, 4.5, 64, 2400, 0.05), WithinAbs(r.john45, 1e-9));
        CHECK_THAT(qlrt_power(f, 4.5, 64, 2400, 0.05), WithinAbs(r.qlrt45, 1e-9));
    }
}

TEST_CASE("power is invariant under rescaling Sigma") {
    const auto f = two_point(0.3);
    for (double c : {0.1, 10.0}) {
        SigmaFunctionals fc{c * f.gamma, c * c * f.theta, c * c * f.omega};
        CHECK_THAT(john_power(fc, 4.5, 64, 2400, 0.05),
                   WithinAbs(john_power(f, 4.5, 64, 2400, 0.05), 1e-12));
        CHECK_THAT(qlrt_power(fc, 4.5, 64, 2400, 0.05),
                   WithinAbs(qlrt_power(f, 4.5, 64, 2400, 0.05), 1e-12));
    }
}

TEST_CASE("power diverges to one as n grows") {
    const auto f = two_point(0.5);
    const double b16 = john_power(f, 3.0, 16, 2400, 0.05);
    const double b64 = john_power(f, 3.0, 64, 2400, 0.05);
    const double b256 = john_power(f, 3.0, 256, 2400, 0.05);
    CHECK(b64 > b16);
    CHECK(b256 > b64);
    const double q16 = qlrt_power(f, 3.0, 16, 2400, 0.05);
    const double q64 = qlrt_power(f, 3.0, 64, 2400, 0.05);
    const double q256 = qlrt_power(f, 3.0, 256, 2400, 0.05);
    CHECK(q64 > q16);
    CHECK(q256 > q64);
}

TEST_CASE("alpha outside (0,1) is rejected") {
    const auto f = two_point(0.5);
    CHECK_THROWS_AS(john_power(f, 3.0, 64, 2400, 0.0), Error);
    CHECK_THROWS_AS(qlrt_power(f, 3.0, 64, 2400, 1.0), Error);
}
