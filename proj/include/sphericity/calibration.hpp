#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "sphericity/matrix.hpp"
#include "sphericity/stats.hpp"

namespace sphericity {

enum class NullKind { JohnUltra, QLRTUltra, ChenNull, SrivastavaNull, LRTClassicalSwap };

const char* null_kind_name(NullKind k);

/// Null limiting model for a statistic. nu4 is the fourth moment of
/// the standardized entries and must be supplied (3 for Gaussian,
/// 4.5 for the centered Gamma(4, rate 2) population).
struct NullModel {
    NullKind kind;
    double nu4;
    Eigen::Index n;
    Eigen::Index p;
};

NullModel make_null_model(TestKind test, double nu4, Eigen::Index n, Eigen::Index p);

struct TestResult {
    StatisticValue statistic;
    double z;        // standardized value
    double p_value;  // one-sided upper, 1 - Phi(z)
    std::map<double, bool> reject_at;
    NullModel null_model;

    bool rejected(double level) const;
};

inline const std::vector<double>& default_levels() {
    static const std::vector<double> levels{0.01, 0.05, 0.10};
    return levels;
}

/// Standardize a raw statistic under its ultra-dimensional null law:
///   John:       z = (n U - p - (nu4 - 2)) / 2
///   QLRT:       z = L_n - n/2 - n^2/(6p) - (nu4 - 2)/2
///   Chen:       z = n U_n / 2
///   Srivastava: z = W_n
/// A degenerate QLRT statistic maps to z = +inf, p-value 0.
TestResult standardize(const StatisticValue& stat, const NullModel& model,
                       const std::vector<double>& levels = default_levels());

/// Classical-regime (n >> p) quasi-LRT obtained by swapping the roles
/// of n and p; works on the p eigenvalues of (1/n) XX'. Requires n >= p
/// data in practice (the p x p Gram must be nonsingular).
TestResult classical_swap_z(const DataMatrix& x, double nu4,
                            const std::vector<double>& levels = default_levels());

/// Same, from a spectral summary of the transposed data matrix.
TestResult classical_swap_z(const SpectralSummary& transposed_summary, double nu4,
                            const std::vector<double>& levels = default_levels());

/// Plug-in estimator of nu4: standardize all entries by the global
/// second moment m2 and average the fourth powers; clamped below at 1.
double estimate_nu4(const DataMatrix& x);

}  // namespace sphericity
