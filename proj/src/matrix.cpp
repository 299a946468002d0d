#include "sphericity/matrix.hpp"

#include <cmath>
#include <string>

#include "sphericity/errors.hpp"

namespace sphericity {

DataMatrix::DataMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
    if (values_.rows() < 1 || values_.cols() < 1) {
        throw Error(ErrorCode::InvalidArgument, "DataMatrix: p and n must be >= 1");
    }
    if (!values_.allFinite()) {
        throw Error(ErrorCode::NonFiniteInput, "DataMatrix: non-finite entry in input");
    }
}

namespace {

// Dot product with four independent accumulators. The fixed summation
// order makes the result reproducible and identical no matter which
// thread computes the entry.
inline double dot(const double* a, const double* b, Eigen::Index len) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    Eigen::Index i = 0;
    for (; i + 4 <= len; i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    for (; i < len; ++i) s0 += a[i] * b[i];
    return (s0 + s1) + (s2 + s3);
}

}  // namespace

Eigen::MatrixXd gram_matrix(const Eigen::MatrixXd& x, GramKernel kernel) {
    const Eigen::Index p = x.rows(), n = x.cols();
    Eigen::MatrixXd g(n, n);
    const double* base = x.data();  // column-major, columns contiguous
    const Eigen::Index pairs = n * (n + 1) / 2;

    if (kernel == GramKernel::OpenMP) {
#pragma omp parallel for schedule(static)
        for (Eigen::Index t = 0; t < pairs; ++t) {
            // unrank t -> (i <= j) over the upper triangle, row-major walk
            Eigen::Index i = Eigen::Index((std::sqrt(8.0 * double(t) + 1.0) - 1.0) / 2.0);
            while ((i + 1) * (i + 2) / 2 <= t) ++i;
            while (i * (i + 1) / 2 > t) --i;
            const Eigen::Index j = t - i * (i + 1) / 2;  // j <= i
            const double v = dot(base + i * p, base + j * p, p);
            g(i, j) = v;
            g(j, i) = v;
        }
    } else {
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j <= i; ++j) {
                const double v = dot(base + i * p, base + j * p, p);
                g(i, j) = v;
                g(j, i) = v;
            }
        }
    }
    return g;
}

double spd_log_determinant(const Eigen::MatrixXd& a, double pivot_tol) {
    const Eigen::Index n = a.rows();
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    double logdet = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        double d = a(j, j);
        for (Eigen::Index k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > pivot_tol)) {
            throw Error(ErrorCode::SingularGram,
                        "spd_log_determinant: pivot " + std::to_string(d) +
                            " at column " + std::to_string(j) + " below tolerance " +
                            std::to_string(pivot_tol));
        }
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        logdet += 2.0 * std::log(ljj);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (Eigen::Index k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / ljj;
        }
    }
    return logdet;
}

SpectralSummary summarize_gram(const Eigen::MatrixXd& g, Eigen::Index p, bool need_eigenvalues,
                               bool need_logdet) {
    const Eigen::Index n = g.rows();
    SpectralSummary s;
    s.n = n;
    s.p = p;
    s.trace1 = g.trace() / double(p);
    s.trace2 = g.squaredNorm() / (double(p) * double(p));

    if (need_logdet) {
        const double pivot_tol = 1e-12 * s.trace1 / double(n);
        s.logdet = spd_log_determinant(g / double(p), pivot_tol);
    }
    if (need_eigenvalues) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g / double(p),
                                                          Eigen::EigenvaluesOnly);
        std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
        s.eigenvalues = std::move(ev);  // Eigen returns ascending order
    }
    return s;
}

SpectralSummary summarize(const DataMatrix& x, bool need_eigenvalues, bool need_logdet,
                          GramKernel kernel) {
    return summarize_gram(gram_matrix(x.values(), kernel), x.p(), need_eigenvalues, need_logdet);
}

std::vector<double> scaled_nonzero_eigenvalues(const SpectralSummary& s) {
    if (!s.eigenvalues) {
        throw Error(ErrorCode::MissingEigenvalues,
                    "scaled_nonzero_eigenvalues: summary has no eigenvalues");
    }
    std::vector<double> out(*s.eigenvalues);
    const double scale = double(s.p) / double(s.n);
    for (double& v : out) v *= scale;
    return out;
}

}  // namespace sphericity
