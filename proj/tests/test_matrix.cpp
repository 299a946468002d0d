#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <cstring>
#include <limits>

#include "sphericity/errors.hpp"
#include "sphericity/matrix.hpp"
#include "sphericity/populations.hpp"

using namespace sphericity;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

DataMatrix random_data(Eigen::Index p, Eigen::Index n, std::uint64_t seed) {
    PopulationSpec pop;
    return sample(pop, p, n, SeedSpec{seed, 0});
}

}  // namespace

TEST_CASE("orthogonal columns of squared norm p give the identity companion") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(4, 2);
    x(0, 0) = 2.0;
    x(1, 1) = 2.0;
    const SpectralSummary s = summarize(DataMatrix(x), true, true);
    CHECK_THAT(s.trace1, WithinAbs(2.0, 1e-14));
    CHECK_THAT(s.trace2, WithinAbs(2.0, 1e-14));
    CHECK_THAT(*s.logdet, WithinAbs(0.0, 1e-14));
    REQUIRE(s.eigenvalues->size() == 2);
    CHECK_THAT((*s.eigenvalues)[0], WithinAbs(1.0, 1e-14));
    CHECK_THAT((*s.eigenvalues)[1], WithinAbs(1.0, 1e-14));
}

TEST_CASE("rank-one single column") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(4, 1);
    x(0, 0) = 2.0;
    const SpectralSummary s = summarize(DataMatrix(x), true, false);
    CHECK_THAT(s.trace1, WithinAbs(1.0, 1e-14));
    CHECK_THAT(s.trace2, WithinAbs(1.0, 1e-14));
    CHECK_THAT((*s.eigenvalues)[0], WithinAbs(1.0, 1e-14));
}

TEST_CASE("eigenvalues are self-consistent with traces and logdet") {
    const DataMatrix x = random_data(50, 5, 1001);
    const SpectralSummary s = summarize(x, true, true);
    double sum = 0.0, sum2 = 0.0, logsum = 0.0;
    for (double v : *s.eigenvalues) {
        sum += v;
        sum2 += v * v;
        logsum += std::log(v);
    }
    CHECK_THAT(sum, WithinRel(s.trace1, 1e-10));
    CHECK_THAT(sum2, WithinRel(s.trace2, 1e-10));
    CHECK_THAT(logsum, WithinAbs(*s.logdet, 1e-10 * std::max(1.0, std::fabs(*s.logdet))));
}

TEST_CASE("companion spectrum duality against the brute-force p x p eigensolve") {
    for (auto [p, n, seed] : {std::tuple<Eigen::Index, Eigen::Index, std::uint64_t>{60, 6, 1},
                              {40, 8, 2},
                              {17, 3, 3}}) {
        const DataMatrix x = random_data(p, n, seed);
        const SpectralSummary s = summarize(x, true, false);
        const std::vector<double> mine = scaled_nonzero_eigenvalues(s);

        // independent route: form the full p x p matrix (1/n) XX'
        Eigen::MatrixXd big = x.values() * x.values().transpose() / double(n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(big, Eigen::EigenvaluesOnly);
        for (Eigen::Index i = 0; i < n; ++i) {
            CHECK_THAT(mine[std::size_t(i)], WithinAbs(es.eigenvalues()[p - n + i], 1e-8));
        }
    }
}

TEST_CASE("scale equivariance of the summary") {
    const DataMatrix x = random_data(30, 6, 77);
    const double c = 3.7;
    const DataMatrix xc(c * x.values());
    const SpectralSummary a = summarize(x, false, true);
    const SpectralSummary b = summarize(xc, false, true);
    CHECK_THAT(b.trace1, WithinRel(c * c * a.trace1, 1e-12));
    CHECK_THAT(b.trace2, WithinRel(c * c * c * c * a.trace2, 1e-12));
    const double expected_logdet = *a.logdet + 2.0 * double(a.n) * std::log(c);
    CHECK_THAT(*b.logdet, WithinRel(expected_logdet, 1e-12));
}

TEST_CASE("Frobenius trace2 equals the eigenvalue sum of squares") {
    for (std::uint64_t seed : {5u, 6u, 7u}) {
        const SpectralSummary s = summarize(random_data(40, 10, seed), true, false);
        double sum2 = 0.0;
        for (double v : *s.eigenvalues) sum2 += v * v;
        CHECK_THAT(s.trace2, WithinRel(sum2, 1e-10));
    }
}

TEST_CASE("Cauchy-Schwarz bound on the trace moments") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SpectralSummary s = summarize(random_data(25, 7, seed), false, false);
        CHECK(s.trace2 >= s.trace1 * s.trace1 / double(s.n) * (1.0 - 1e-12));
    }
}

TEST_CASE("serial and OpenMP Gram kernels agree bit for bit") {
    const DataMatrix x = random_data(123, 17, 9);
    const Eigen::MatrixXd a = gram_matrix(x.values(), GramKernel::Serial);
    const Eigen::MatrixXd b = gram_matrix(x.values(), GramKernel::OpenMP);
    REQUIRE(a.size() == b.size());
    CHECK(std::memcmp(a.data(), b.data(), sizeof(double) * std::size_t(a.size())) == 0);
}

TEST_CASE("non-finite input is rejected up front") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Ones(3, 2);
    x(1, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(DataMatrix(x), Error);
    x(1, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(DataMatrix(x), Error);
}

TEST_CASE("singular Gram raises only when the log-determinant is requested") {
    Eigen::MatrixXd x(4, 2);
    x.col(0) << 1, 2, 3, 4;
    x.col(1) = x.col(0);  // duplicated observation
    const DataMatrix d(x);
    CHECK_NOTHROW(summarize(d, false, false));
    try {
        summarize(d, false, true);
        FAIL("expected SingularGram");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SingularGram);
    }
}

TEST_CASE("scaled_nonzero_eigenvalues requires eigenvalues") {
    const SpectralSummary s = summarize(random_data(10, 3, 4), false, false);
    try {
        scaled_nonzero_eigenvalues(s);
        FAIL("expected MissingEigenvalues");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingEigenvalues);
    }
}

TEST_CASE("scaled eigenvalues apply the p/n factor") {
    // lambda-tilde = [0.5, 1, 1.5] at p=6, n=3 scales to [1, 2, 3]
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(6, 3);
    x(0, 0) = std::sqrt(3.0);
    x(1, 1) = std::sqrt(6.0);
    x(2, 2) = 3.0;
    const SpectralSummary s = summarize(DataMatrix(x), true, false);
    const auto l = scaled_nonzero_eigenvalues(s);
    CHECK_THAT(l[0], WithinAbs(1.0, 1e-12));
    CHECK_THAT(l[1], WithinAbs(2.0, 1e-12));
    CHECK_THAT(l[2], WithinAbs(3.0, 1e-12));
}
