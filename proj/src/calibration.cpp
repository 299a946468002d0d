#include "sphericity/calibration.hpp"

#include <cmath>
#include <limits>

#include "sphericity/errors.hpp"
#include "sphericity/normal.hpp"

namespace sphericity {

const char* null_kind_name(NullKind k) {
    switch (k) {
        case NullKind::JohnUltra: return "john-ultra";
        case NullKind::QLRTUltra: return "qlrt-ultra";
        case NullKind::ChenNull: return "chen-null";
        case NullKind::SrivastavaNull: return "srivastava-null";
        case NullKind::LRTClassicalSwap: return "lrt-classical-swap";
    }
    return "?";
}

NullModel make_null_model(TestKind test, double nu4, Eigen::Index n, Eigen::Index p) {
    NullKind kind;
    switch (test) {
        case TestKind::John: kind = NullKind::JohnUltra; break;
        case TestKind::QLRT: kind = NullKind::QLRTUltra; break;
        case TestKind::Chen: kind = NullKind::ChenNull; break;
        case TestKind::Srivastava: kind = NullKind::SrivastavaNull; break;
        default: throw Error(ErrorCode::KindMismatch, "make_null_model: unknown test kind");
    }
    return {kind, nu4, n, p};
}

bool TestResult::rejected(double level) const {
    auto it = reject_at.find(level);
    if (it != reject_at.end()) return it->second;
    return z > normal_upper_quantile(level);
}

namespace {

TestResult finish(const StatisticValue& stat, double z, const NullModel& model,
                  const std::vector<double>& levels) {
    TestResult r{stat, z, normal_upper_p(z), {}, model};
    for (double a : levels) r.reject_at[a] = z > normal_upper_quantile(a);
    return r;
}

bool kind_matches(TestKind t, NullKind k) {
    switch (k) {
        case NullKind::JohnUltra: return t == TestKind::John;
        case NullKind::QLRTUltra: return t == TestKind::QLRT;
        case NullKind::ChenNull: return t == TestKind::Chen;
        case NullKind::SrivastavaNull: return t == TestKind::Srivastava;
        case NullKind::LRTClassicalSwap: return t == TestKind::QLRT;
    }
    return false;
}

}  // namespace

TestResult standardize(const StatisticValue& stat, const NullModel& model,
                       const std::vector<double>& levels) {
    if (!kind_matches(stat.kind, model.kind)) {
        throw Error(ErrorCode::KindMismatch, "standardize: statistic kind does not match null model");
    }
    if (!std::isfinite(model.nu4) || model.nu4 < 1.0) {
        throw Error(ErrorCode::InvalidArgument, "standardize: nu4 must be finite and >= 1");
    }
    const double n = double(model.n), p = double(model.p);

    if (stat.degenerate) {
        return finish(stat, std::numeric_limits<double>::infinity(), model, levels);
    }
    if (!std::isfinite(stat.value)) {
        throw Error(ErrorCode::NonFiniteStatistic, "standardize: non-finite statistic");
    }

    double z = 0.0;
    switch (model.kind) {
        case NullKind::JohnUltra:
            z = (n * stat.value - p - (model.nu4 - 2.0)) / 2.0;
            break;
        case NullKind::QLRTUltra:
            z = stat.value - n / 2.0 - n * n / (6.0 * p) - (model.nu4 - 2.0) / 2.0;
            break;
        case NullKind::ChenNull:
            z = n * stat.value / 2.0;
            break;
        case NullKind::SrivastavaNull:
            z = stat.value;
            break;
        case NullKind::LRTClassicalSwap:
            // stat.value holds -(2/p) log L_n; roles of n and p swapped.
            z = stat.value - p / 2.0 - p * p / (6.0 * n) - (model.nu4 - 2.0) / 2.0;
            break;
    }
    return finish(stat, z, model, levels);
}

TestResult classical_swap_z(const SpectralSummary& transposed_summary, double nu4,
                            const std::vector<double>& levels) {
    // transposed_summary describes X': its companion matrix is the
    // p x p sample Gram (1/n) XX', so qlrt_L on it is -(2/p) log L_n.
    StatisticValue swapped = qlrt_L(transposed_summary);
    // In the swapped frame: statistic dimension counts trade places.
    const Eigen::Index orig_p = transposed_summary.n;
    const Eigen::Index orig_n = transposed_summary.p;
    swapped.n = orig_n;
    swapped.p = orig_p;
    NullModel model{NullKind::LRTClassicalSwap, nu4, orig_n, orig_p};
    return standardize(swapped, model, levels);
}

TestResult classical_swap_z(const DataMatrix& x, double nu4, const std::vector<double>& levels) {
    return classical_swap_z(summarize(x.transposed(), false, true), nu4, levels);
}

double estimate_nu4(const DataMatrix& x) {
    const auto& v = x.values();
    const double np = double(v.size());
    const double m2 = v.squaredNorm() / np;
    if (!(m2 > 0.0)) {
        throw Error(ErrorCode::ZeroTrace, "estimate_nu4: all-zero data");
    }
    const double m4 = v.array().square().square().sum() / np;
    const double nu4 = m4 / (m2 * m2);
    return nu4 < 1.0 ? 1.0 : nu4;
}

}  // namespace sphericity
