#include "sphericity/power.hpp"

#include <cmath>

#include "sphericity/errors.hpp"
#include "sphericity/normal.hpp"

namespace sphericity {

namespace {

void check_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorCode::NonPositiveDiagonal, std::string(what) + " must be positive and finite");
    }
}

}  // namespace

SigmaFunctionals functionals(const SigmaSpec& spec) {
    SigmaFunctionals f;
    if (const auto* si = std::get_if<ScaledIdentity>(&spec.kind)) {
        check_positive(si->sigma2, "sigma^2");
        f.gamma = si->sigma2;
        f.theta = si->sigma2 * si->sigma2;
        f.omega = f.theta;
    } else if (const auto* tp = std::get_if<TwoPointDiagonal>(&spec.kind)) {
        check_positive(tp->a, "diagonal value a");
        check_positive(tp->b, "diagonal value b");
        if (!(tp->delta >= 0.0 && tp->delta <= 1.0)) {
            throw Error(ErrorCode::InvalidArgument, "TwoPointDiagonal: delta must be in [0,1]");
        }
        const double d = tp->delta;
        f.gamma = d * tp->b + (1.0 - d) * tp->a;
        f.theta = d * tp->b * tp->b + (1.0 - d) * tp->a * tp->a;
        f.omega = f.theta;
    } else if (const auto* ed = std::get_if<ExplicitDiagonal>(&spec.kind)) {
        if (ed->diag.empty()) {
            throw Error(ErrorCode::InvalidArgument, "ExplicitDiagonal: empty diagonal");
        }
        double s1 = 0.0, s2 = 0.0;
        for (double v : ed->diag) {
            check_positive(v, "diagonal entry");
            s1 += v;
            s2 += v * v;
        }
        const double p = double(ed->diag.size());
        f.gamma = s1 / p;
        f.theta = s2 / p;
        f.omega = f.theta;
    } else {
        const auto& m = std::get<ExplicitSPD>(spec.kind).matrix;
        if (m.rows() != m.cols() || m.rows() < 1) {
            throw Error(ErrorCode::InvalidArgument, "ExplicitSPD: matrix must be square");
        }
        const double p = double(m.rows());
        double omega = 0.0;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            check_positive(m(i, i), "diagonal entry");
            omega += m(i, i) * m(i, i);
        }
        f.gamma = m.trace() / p;
        f.theta = m.squaredNorm() / p;  // tr(Sigma^2) for symmetric Sigma
        f.omega = omega / p;
    }
    return f;
}

bool sigma_is_diagonal(const SigmaSpec& spec) {
    return !std::holds_alternative<ExplicitSPD>(spec.kind);
}

std::vector<double> sigma_diagonal(const SigmaSpec& spec) {
    if (const auto* si = std::get_if<ScaledIdentity>(&spec.kind)) {
        return std::vector<double>(std::size_t(spec.p), si->sigma2);
    }
    if (const auto* tp = std::get_if<TwoPointDiagonal>(&spec.kind)) {
        const auto p = std::size_t(spec.p);
        const auto nb = std::size_t(std::llround(tp->delta * double(spec.p)));
        std::vector<double> d(p, tp->a);
        for (std::size_t i = 0; i < nb && i < p; ++i) d[i] = tp->b;
        return d;
    }
    if (const auto* ed = std::get_if<ExplicitDiagonal>(&spec.kind)) {
        return ed->diag;
    }
    throw Error(ErrorCode::InvalidArgument, "sigma_diagonal: spec is not diagonal");
}

AltParams john_alt_params(const SigmaFunctionals& f, double nu4, Eigen::Index n, Eigen::Index p) {
    const double g2 = f.gamma * f.gamma;
    const double shift = (f.theta / g2 - 1.0) * double(n);
    const double mean = (f.theta + f.omega * (nu4 - 3.0)) / g2;
    const double sd = 2.0 * f.theta / g2;
    const bool warn = double(n) * double(n) * double(n) / double(p) > 1000.0;
    return {shift, mean, sd, warn};
}

double john_power(const SigmaFunctionals& f, double nu4, Eigen::Index n, Eigen::Index p,
                  double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "john_power: alpha must be in (0,1)");
    }
    (void)p;
    const double g2 = f.gamma * f.gamma;
    const double t = f.theta;
    const double za = normal_upper_quantile(alpha);
    const double arg = (g2 / t) * za + (g2 * (nu4 - 2.0) - t - f.omega * (nu4 - 3.0)) / (2.0 * t) +
                       (g2 - t) * double(n) / (2.0 * t);
    return normal_upper_p(arg);
}

AltParams qlrt_alt_params(const SigmaFunctionals& f, double nu4, Eigen::Index n, Eigen::Index p) {
    const double g = f.gamma, t = f.theta;
    const double g2 = g * g, g3 = g2 * g, g4 = g2 * g2;
    const double n2p = double(n) * double(n) / double(p);
    const double center = (t / (2.0 * g2)) * double(n) +
                          (t * t / (2.0 * g4) - t * std::sqrt(t) / (3.0 * g3)) * n2p;
    const double mean = t / (2.0 * g2) + (f.omega / (2.0 * g2)) * (nu4 - 3.0);
    const double sd = t / g2;
    const bool warn = double(n) * double(n) * double(n) / double(p) > 1000.0;
    return {center, mean, sd, warn};
}

double qlrt_power(const SigmaFunctionals& f, double nu4, Eigen::Index n, Eigen::Index p,
                  double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "qlrt_power: alpha must be in (0,1)");
    }
    const double g = f.gamma, t = f.theta;
    const double g2 = g * g;
    const double za = normal_upper_quantile(alpha);
    const double n2p = double(n) * double(n) / double(p);
    const double arg = (g2 / t) * za + ((g2 - t) / (2.0 * t)) * double(n) +
                       (g2 / (6.0 * t) - t / (2.0 * g2) + std::sqrt(t) / (3.0 * g)) * n2p +
                       (g2 * (nu4 - 2.0) - t - f.omega * (nu4 - 3.0)) / (2.0 * t);
    return normal_upper_p(arg);
}

}  // namespace sphericity
