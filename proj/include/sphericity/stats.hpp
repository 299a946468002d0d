#pragma once

#include <Eigen/Dense>

#include "sphericity/matrix.hpp"

namespace sphericity {

enum class TestKind { John, QLRT, Chen, Srivastava };

const char* test_kind_name(TestKind k);

struct StatisticValue {
    TestKind kind;
    double value;
    Eigen::Index n;
    Eigen::Index p;
    /// QLRT only: the Gram matrix was singular, value is +infinity and
    /// downstream calibration treats it as overwhelming evidence
    /// against sphericity.
    bool degenerate = false;
};

/// John's U = p * tr(S^2)/tr(S)^2 - 1 over S = (1/n) XX', computed from
/// companion traces: U = p * trace2 / trace1^2 - 1. Exactly scale-free.
StatisticValue john_U(const SpectralSummary& s);

/// Quasi-LRT statistic over the n companion eigenvalues:
/// L_n = (p/n) * [ n log(trace1/n) - logdet ]. Nonnegative (AM-GM),
/// zero iff all companion eigenvalues are equal.
StatisticValue qlrt_L(const SpectralSummary& s);

/// Convenience wrapper: computes the summary itself and reports a
/// degenerate (+inf) statistic instead of failing when the Gram matrix
/// is singular.
StatisticValue qlrt_L_from_data(const DataMatrix& x, GramKernel kernel = GramKernel::OpenMP);

enum class ChenMethod { BruteForce, Reduced };

/// Chen-Zhang-Zhong U_n = p * T2/T1^2 - 1 built from U-statistics over
/// distinct indices. BruteForce sums the literal index tuples (n <= 12);
/// Reduced evaluates closed forms in the Gram matrix, O(n^2) after the
/// Gram build.
StatisticValue chen_Un(const DataMatrix& x, ChenMethod method = ChenMethod::Reduced,
                       GramKernel kernel = GramKernel::OpenMP);

/// Same statistic when the Gram matrix is already available.
StatisticValue chen_Un_from_gram(const Eigen::MatrixXd& g, Eigen::Index p, ChenMethod method);

/// Srivastava's W_n = (n/2) [ c_n (1/p)(tr S^2 - (tr S)^2 / n) / ((1/p) tr S)^2 - 1 ],
/// c_n = n^2 / ((n-1)(n+2)).
StatisticValue srivastava_Wn(const SpectralSummary& s);

}  // namespace sphericity
