#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>

#include "sphericity/calibration.hpp"
#include "sphericity/errors.hpp"
#include "sphericity/normal.hpp"
#include "sphericity/populations.hpp"

using namespace sphericity;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

DataMatrix identity_companion_4x2() {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(4, 2);
    x(0, 0) = 2.0;
    x(1, 1) = 2.0;
    return DataMatrix(x);
}

}  // namespace

TEST_CASE("standardize John on the identity-companion fixture") {
    const auto s = summarize(identity_companion_4x2());
    const auto r = standardize(john_U(s), make_null_model(TestKind::John, 3.0, 2, 4));
    CHECK_THAT(r.z, WithinAbs(-1.5, 1e-13));
    CHECK_THAT(r.p_value, WithinAbs(0.9331927987311419, 1e-12));
    CHECK_FALSE(r.rejected(0.05));
}

TEST_CASE("QLRT centering identity gives z = 0") {
    const Eigen::Index n = 8, p = 160;
    const double nu4 = 3.7;
    const double center = n / 2.0 + double(n) * double(n) / (6.0 * double(p)) + (nu4 - 2.0) / 2.0;
    StatisticValue stat{TestKind::QLRT, center, n, p, false};
    const auto r = standardize(stat, make_null_model(TestKind::QLRT, nu4, n, p));
    CHECK_THAT(r.z, WithinAbs(0.0, 1e-13));
    CHECK_THAT(r.p_value, WithinAbs(0.5, 1e-13));
}

TEST_CASE("Chen z is n Un / 2") {
    StatisticValue stat{TestKind::Chen, 0.0, 64, 320, false};
    const auto r = standardize(stat, make_null_model(TestKind::Chen, 3.0, 64, 320));
    CHECK(r.z == 0.0);
    CHECK_THAT(r.p_value, WithinAbs(0.5, 1e-13));
    StatisticValue stat2{TestKind::Chen, 0.125, 64, 320, false};
    const auto r2 = standardize(stat2, make_null_model(TestKind::Chen, 3.0, 64, 320));
    CHECK_THAT(r2.z, WithinAbs(4.0, 1e-13));
}

TEST_CASE("Srivastava z is Wn itself") {
    StatisticValue stat{TestKind::Srivastava, 1.7, 64, 320, false};
    const auto r = standardize(stat, make_null_model(TestKind::Srivastava, 3.0, 64, 320));
    CHECK(r.z == 1.7);
}

TEST_CASE("kind mismatch and bad nu4 are rejected") {
    StatisticValue stat{TestKind::John, 1.0, 2, 4, false};
    CHECK_THROWS_AS(standardize(stat, make_null_model(TestKind::Chen, 3.0, 2, 4)), Error);
    CHECK_THROWS_AS(standardize(stat, make_null_model(TestKind::John, 0.5, 2, 4)), Error);
}

TEST_CASE("degenerate statistic maps to certain rejection") {
    StatisticValue stat{TestKind::QLRT, std::numeric_limits<double>::infinity(), 4, 2, true};
    const auto r = standardize(stat, make_null_model(TestKind::QLRT, 3.0, 4, 2));
    CHECK(r.p_value == 0.0);
    CHECK(r.rejected(0.01));
}

TEST_CASE("p-value is monotone decreasing in z and decisions are nested") {
    double prev = 1.1;
    for (double z = -4.0; z <= 4.0; z += 0.25) {
        StatisticValue stat{TestKind::Srivastava, z, 16, 64, false};
        const auto r = standardize(stat, make_null_model(TestKind::Srivastava, 3.0, 16, 64));
        CHECK(r.p_value < prev);
        prev = r.p_value;
        if (r.rejected(0.01)) CHECK(r.rejected(0.05));
        if (r.rejected(0.05)) CHECK(r.rejected(0.10));
    }
}

TEST_CASE("role-swap identity: nU - p equals p U~ - n exactly") {
    for (auto [p, n, seed] : {std::tuple<Eigen::Index, Eigen::Index, std::uint64_t>{7, 4, 31},
                              {12, 5, 32},
                              {4, 9, 33},
                              {16, 16, 34}}) {
        PopulationSpec pop;
        const DataMatrix x = sample(pop, p, n, SeedSpec{seed, 0});
        const auto s = summarize(x);
        const auto st = summarize(x.transposed());
        const double lhs = double(n) * john_U(s).value - double(p);
        const double rhs = double(p) * john_U(st).value - double(n);
        CHECK_THAT(lhs, WithinAbs(rhs, 1e-10 * std::max(1.0, std::fabs(lhs))));
    }
}

TEST_CASE("classical swap on the identity p x p sample covariance") {
    // p=2, n=4 with (1/n) XX' = I_2: z = 0 - p/2 - p^2/(6n) - 0 = -7/6
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(2, 4);
    x(0, 0) = 2.0;
    x(1, 1) = 2.0;
    const auto r = classical_swap_z(DataMatrix(x), 3.0);
    CHECK_THAT(r.z, WithinAbs(-7.0 / 6.0, 1e-12));
    CHECK(r.null_model.kind == NullKind::LRTClassicalSwap);
}

TEST_CASE("classical swap needs n >= p data") {
    PopulationSpec pop;
    const DataMatrix x = sample(pop, 10, 4, SeedSpec{3, 0});  // p > n: XX' singular
    try {
        classical_swap_z(x, 3.0);
        FAIL("expected SingularGram");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SingularGram);
    }
}

TEST_CASE("classical swap holds its size in its own regime") {
    // n=500, p=5 Gaussian data: empirical size within 0.05 +/- 0.015
    PopulationSpec pop;
    const int reps = 2000;
    int rejects = 0;
    for (int r = 0; r < reps; ++r) {
        const DataMatrix x = sample(pop, 5, 500, SeedSpec{909, std::uint64_t(r)});
        if (classical_swap_z(x, 3.0).rejected(0.05)) ++rejects;
    }
    const double rate = double(rejects) / reps;
    CHECK(rate > 0.035);
    CHECK(rate < 0.065);
}

TEST_CASE("standardized John z is invariant under transposition") {
    PopulationSpec pop;
    const DataMatrix x = sample(pop, 11, 6, SeedSpec{88, 0});
    const auto a = standardize(john_U(summarize(x)), make_null_model(TestKind::John, 3.0, 6, 11));
    const auto b =
        standardize(john_U(summarize(x.transposed())), make_null_model(TestKind::John, 3.0, 11, 6));
    CHECK_THAT(a.z, WithinAbs(b.z, 1e-10));
}

TEST_CASE("nu4 estimator on sign matrices is exactly one") {
    Eigen::MatrixXd x(3, 4);
    x << 1, -1, 1, -1, -1, 1, -1, 1, 1, 1, -1, -1;
    CHECK(estimate_nu4(DataMatrix(x)) == 1.0);
}

TEST_CASE("nu4 estimator recovers the Gaussian fourth moment") {
    PopulationSpec pop;
    const DataMatrix x = sample(pop, 1000, 1000, SeedSpec{17, 0});
    CHECK_THAT(estimate_nu4(x), WithinAbs(3.0, 0.02));
}

TEST_CASE("nu4 estimator recovers the centered-Gamma fourth moment") {
    PopulationSpec pop;
    pop.entry_dist = EntryDist::CenteredGamma;
    const DataMatrix x = sample(pop, 1000, 1000, SeedSpec{18, 0});
    CHECK_THAT(estimate_nu4(x), WithinAbs(4.5, 0.05));
}

TEST_CASE("QLRT standardized value is scale invariant in the data") {
    PopulationSpec pop;
    const DataMatrix x = sample(pop, 48, 8, SeedSpec{55, 0});
    const DataMatrix xc(3.7 * x.values());
    const auto a =
        standardize(qlrt_L(summarize(x, false, true)), make_null_model(TestKind::QLRT, 3.0, 8, 48));
    const auto b = standardize(qlrt_L(summarize(xc, false, true)),
                               make_null_model(TestKind::QLRT, 3.0, 8, 48));
    CHECK_THAT(a.z, WithinAbs(b.z, 1e-10));
}
