#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace sphericity {

/// p x n data matrix: rows index variables, columns index observations.
/// Entries are validated finite on construction.
class DataMatrix {
public:
    explicit DataMatrix(Eigen::MatrixXd values);

    Eigen::Index p() const { return values_.rows(); }
    Eigen::Index n() const { return values_.cols(); }
    const Eigen::MatrixXd& values() const { return values_; }

    DataMatrix transposed() const { return DataMatrix(values_.transpose()); }

private:
    Eigen::MatrixXd values_;
};

/// Trace moments and log-determinant of the n x n companion matrix
/// (1/p) X'X. Sufficient statistics for every test in this library;
/// the p x p matrix XX' is never formed.
struct SpectralSummary {
    Eigen::Index n = 0;
    Eigen::Index p = 0;
    double trace1 = 0.0;  // tr(X'X)/p   = sum of companion eigenvalues
    double trace2 = 0.0;  // tr((X'X)^2)/p^2 = sum of squared companion eigenvalues
    std::optional<double> logdet;                      // log det((1/p) X'X)
    std::optional<std::vector<double>> eigenvalues;    // ascending, of (1/p) X'X
};

enum class GramKernel { Serial, OpenMP };

/// n x n Gram matrix X'X. Every entry is a single serial dot product,
/// so the Serial and OpenMP kernels are bit-identical; OpenMP only
/// distributes whole entries across threads.
Eigen::MatrixXd gram_matrix(const Eigen::MatrixXd& x, GramKernel kernel = GramKernel::OpenMP);

/// Cholesky log-determinant of a symmetric positive definite matrix.
/// Throws SingularGram when a pivot falls below pivot_tol.
double spd_log_determinant(const Eigen::MatrixXd& a, double pivot_tol);

SpectralSummary summarize(const DataMatrix& x, bool need_eigenvalues = false,
                          bool need_logdet = false,
                          GramKernel kernel = GramKernel::OpenMP);

/// Same, from a prebuilt Gram matrix X'X (n x n).
SpectralSummary summarize_gram(const Eigen::MatrixXd& gram, Eigen::Index p,
                               bool need_eigenvalues = false, bool need_logdet = false);

/// Nonzero spectrum of (1/n) XX' recovered from the companion:
/// l_i = (p/n) * lambda_i, ascending.
std::vector<double> scaled_nonzero_eigenvalues(const SpectralSummary& s);

}  // namespace sphericity
