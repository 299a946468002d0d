#include "sphericity/stats.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sphericity/errors.hpp"

namespace sphericity {

const char* test_kind_name(TestKind k) {
    switch (k) {
        case TestKind::John: return "john";
        case TestKind::QLRT: return "qlrt";
        case TestKind::Chen: return "chen";
        case TestKind::Srivastava: return "srivastava";
    }
    return "?";
}

StatisticValue john_U(const SpectralSummary& s) {
    if (!(s.trace1 > 0.0)) {
        throw Error(ErrorCode::ZeroTrace, "john_U: tr(X'X) must be positive");
    }
    const double u = double(s.p) * s.trace2 / (s.trace1 * s.trace1) - 1.0;
    return {TestKind::John, u, s.n, s.p, false};
}

StatisticValue qlrt_L(const SpectralSummary& s) {
    if (!(s.trace1 > 0.0)) {
        throw Error(ErrorCode::ZeroTrace, "qlrt_L: tr(X'X) must be positive");
    }
    if (!s.logdet) {
        throw Error(ErrorCode::MissingEigenvalues,
                    "qlrt_L: summary was built without the log-determinant");
    }
    const double n = double(s.n), p = double(s.p);
    const double l = (p / n) * (n * std::log(s.trace1 / n) - *s.logdet);
    return {TestKind::QLRT, l, s.n, s.p, false};
}

StatisticValue qlrt_L_from_data(const DataMatrix& x, GramKernel kernel) {
    try {
        return qlrt_L(summarize(x, false, true, kernel));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularGram) throw;
        return {TestKind::QLRT, std::numeric_limits<double>::infinity(), x.n(), x.p(), true};
    }
}

namespace {

StatisticValue chen_reduced(const Eigen::MatrixXd& g, Eigen::Index p) {
    const Eigen::Index n = g.rows();
    const Eigen::VectorXd d = g.diagonal();
    const double s1 = d.sum();                       // tr G
    const double sum_all = g.sum();                  // sum of all entries
    const double q = g.squaredNorm();                // tr G^2
    const double e = sum_all - s1;                   // sum over i != j
    const double a = q - d.squaredNorm();            // sum_{i!=j} G_ij^2
    const Eigen::VectorXd r = g.rowwise().sum() - d; // off-diagonal row sums
    const double b = r.squaredNorm() - a;            // sum over distinct (i,j,k) of G_ij G_jk
    const double c = e * e - 2.0 * a - 4.0 * b;      // sum over distinct (i,j,k,l) of G_ij G_kl

    const double nn = double(n);
    const double p2 = nn * (nn - 1.0);
    const double p3 = p2 * (nn - 2.0);
    const double p4 = p3 * (nn - 3.0);
    const double t1 = s1 / nn - e / p2;
    const double t2 = a / p2 - 2.0 * b / p3 + c / p4;

    if (std::fabs(t1) < 1e-12 * s1 / nn) {
        throw Error(ErrorCode::DegenerateT1, "chen_Un: T1 is numerically zero");
    }
    return {TestKind::Chen, double(p) * (t2 / (t1 * t1)) - 1.0, n, p, false};
}

StatisticValue chen_brute(const Eigen::MatrixXd& g, Eigen::Index p) {
    const Eigen::Index n = g.rows();
    const double nn = double(n);
    const double p2 = nn * (nn - 1.0);
    const double p3 = p2 * (nn - 2.0);
    const double p4 = p3 * (nn - 3.0);

    double off = 0.0, a = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j) {
                off += g(i, j);
                a += g(i, j) * g(i, j);
            }
    double b = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k)
                if (i != j && j != k && i != k) b += g(i, j) * g(j, k);
    double c = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k)
                for (Eigen::Index l = 0; l < n; ++l)
                    if (i != j && i != k && i != l && j != k && j != l && k != l)
                        c += g(i, j) * g(k, l);

    const double s1 = g.diagonal().sum();
    const double t1 = s1 / nn - off / p2;
    const double t2 = a / p2 - 2.0 * b / p3 + c / p4;
    if (std::fabs(t1) < 1e-12 * s1 / nn) {
        throw Error(ErrorCode::DegenerateT1, "chen_Un: T1 is numerically zero");
    }
    return {TestKind::Chen, double(p) * (t2 / (t1 * t1)) - 1.0, n, p, false};
}

}  // namespace

StatisticValue chen_Un_from_gram(const Eigen::MatrixXd& g, Eigen::Index p, ChenMethod method) {
    const Eigen::Index n = g.rows();
    if (n < 4) {
        throw Error(ErrorCode::SampleTooSmall,
                    "chen_Un: needs n >= 4 distinct indices, got n = " + std::to_string(n));
    }
    if (method == ChenMethod::BruteForce) {
        if (n > 12) {
            throw Error(ErrorCode::InvalidArgument,
                        "chen_Un: BruteForce is limited to n <= 12; use Reduced");
        }
        return chen_brute(g, p);
    }
    return chen_reduced(g, p);
}

StatisticValue chen_Un(const DataMatrix& x, ChenMethod method, GramKernel kernel) {
    return chen_Un_from_gram(gram_matrix(x.values(), kernel), x.p(), method);
}

StatisticValue srivastava_Wn(const SpectralSummary& s) {
    if (s.n < 2) {
        throw Error(ErrorCode::SampleTooSmall, "srivastava_Wn: needs n >= 2");
    }
    if (!(s.trace1 > 0.0)) {
        throw Error(ErrorCode::ZeroTrace, "srivastava_Wn: tr(X'X) must be positive");
    }
    const double n = double(s.n), p = double(s.p);
    const double tr_s = (p / n) * s.trace1;
    const double tr_s2 = (p * p) / (n * n) * s.trace2;
    const double cn = n * n / ((n - 1.0) * (n + 2.0));
    const double num = cn * (tr_s2 - tr_s * tr_s / n) / p;
    const double den = (tr_s / p) * (tr_s / p);
    const double w = 0.5 * n * (num / den - 1.0);
    return {TestKind::Srivastava, w, s.n, s.p, false};
}

}  // namespace sphericity
