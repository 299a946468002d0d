#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

namespace sphericity {

/// Population covariance specification for alternatives.
struct ScaledIdentity {
    double sigma2 = 1.0;
};

/// Diagonal with entries a and b; delta is the proportion of entries
/// equal to b. The count of b-entries at finite p is round(delta * p).
struct TwoPointDiagonal {
    double a = 0.5;
    double b = 1.0;
    double delta = 0.5;
};

struct ExplicitDiagonal {
    std::vector<double> diag;
};

struct ExplicitSPD {
    Eigen::MatrixXd matrix;
};

struct SigmaSpec {
    std::variant<ScaledIdentity, TwoPointDiagonal, ExplicitDiagonal, ExplicitSPD> kind;
    Eigen::Index p = 0;
};

/// gamma = tr(Sigma)/p, theta = tr(Sigma^2)/p, omega = sum_i Sigma_ii^2 / p,
/// evaluated exactly at finite p.
struct SigmaFunctionals {
    double gamma = 1.0;
    double theta = 1.0;
    double omega = 1.0;
};

SigmaFunctionals functionals(const SigmaSpec& spec);

/// Diagonal entries (or full matrix square root) used by the samplers.
std::vector<double> sigma_diagonal(const SigmaSpec& spec);
bool sigma_is_diagonal(const SigmaSpec& spec);

struct AltParams {
    double center;  // deterministic shift of the statistic under H1
    double mean;    // mean of the limiting normal
    double sd;      // standard deviation of the limiting normal
    bool regime_warning;  // n^3/p > 1000, outside the theory's comfort zone
};

/// John under H1: nU - p - (theta/gamma^2 - 1) n  ->  N((theta + omega(nu4-3))/gamma^2,
/// 4 theta^2 / gamma^4). Returns (shift, mean, sd).
AltParams john_alt_params(const SigmaFunctionals& f, double nu4, Eigen::Index n, Eigen::Index p);

/// Asymptotic power of John's test at one-sided level alpha.
double john_power(const SigmaFunctionals& f, double nu4, Eigen::Index n, Eigen::Index p,
                  double alpha);

/// QLRT under H1: L_n - [ (theta/2gamma^2) n + (theta^2/2gamma^4 -
/// theta^{3/2}/3gamma^3) n^2/p ]  ->  N(theta/2gamma^2 + (omega/2gamma^2)(nu4-3),
/// theta^2/gamma^4).
AltParams qlrt_alt_params(const SigmaFunctionals& f, double nu4, Eigen::Index n, Eigen::Index p);

/// Asymptotic power of the quasi-LRT at one-sided level alpha.
double qlrt_power(const SigmaFunctionals& f, double nu4, Eigen::Index n, Eigen::Index p,
                  double alpha);

}  // namespace sphericity
