#include "sphericity/contour.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sphericity/errors.hpp"

namespace sphericity {

using cd = std::complex<double>;

const char* correction_fn_name(CorrectionFn f) {
    switch (f) {
        case CorrectionFn::F1: return "f1:x^2";
        case CorrectionFn::F2: return "f2:x";
        case CorrectionFn::F3: return "f3:(p/n)log(1+sqrt(n/p)x)";
    }
    return "?";
}

std::complex<double> chi_calib(cd m, int n, double p, double nu4) {
    if (std::abs(m) >= 1.0) {
        throw Error(ErrorCode::InvalidArgument, "chi_calib: |m| must be < 1");
    }
    const double snp = std::sqrt(double(n) / p);
    const cd one{1.0, 0.0};
    const cd m2 = m * m;
    if (std::abs(one - m2) < 1e-14) {
        throw Error(ErrorCode::PoleOnContour, "chi_calib: 1 - m^2 vanishes on the contour");
    }
    const cd a = m - snp * (one + m2);
    const cd b = m2 - one - (double(n) / p) * m * (one + 2.0 * m2);
    const cd c = (m2 * m / double(n)) * (nu4 - 2.0 + m2 / (one - m2) - 2.0 * (nu4 - 1.0) * m * snp) -
                 snp * m2 * m2;
    if (std::abs(b) < 1e-14) {
        throw Error(ErrorCode::PoleOnContour, "chi_calib: B vanishes on the contour");
    }
    // s = B * sqrt(1 - 4AC/B^2): for the small 4AC/B^2 arising on the
    // contours used here, Im(s) automatically carries the sign of Im(B)
    // and the root is continuous across Im(B) = 0.
    const cd ratio = 4.0 * a * c / (b * b);
    const cd root = std::sqrt(one - ratio);
    return -2.0 * c / (b * (one + root));
}

double a_root_inner(int n, double p) {
    const double cpn = std::sqrt(p / double(n));
    if (cpn * cpn <= 4.0) {
        throw Error(ErrorCode::InvalidArgument, "a_root_inner: requires p/n > 4");
    }
    return 2.0 / (cpn + std::sqrt(cpn * cpn - 4.0));
}

double default_rho(CorrectionFn f, int n, double p) {
    const double snp = std::sqrt(double(n) / p);
    if (f == CorrectionFn::F3) {
        return std::min(std::max(0.05, 2.0 * snp), 0.45);
    }
    return std::min(0.5 * snp, 0.05);
}

ContourResult correction_integral(CorrectionFn f, int n, double p, double nu4, double rho,
                                  int nodes) {
    if (nodes < 256 || (nodes & (nodes - 1)) != 0) {
        throw Error(ErrorCode::InvalidArgument, "correction_integral: nodes must be a power of two >= 256");
    }
    const double snp = std::sqrt(double(n) / p);
    if (f == CorrectionFn::F3) {
        if (p / double(n) <= 4.0) {
            throw Error(ErrorCode::BadContourRadius,
                        "correction_integral: F3 needs p/n > 4 (log branch point must sit outside the semicircle support)");
        }
        const double inner = a_root_inner(n, p);
        if (!(rho > inner && rho <= 0.5)) {
            throw Error(ErrorCode::BadContourRadius,
                        "correction_integral: F3 requires inner A-root < rho <= 0.5 (log winding cancels only when the contour encloses m=" +
                            std::to_string(inner) + "), got rho=" + std::to_string(rho));
        }
    } else {
        if (!(rho > 0.0 && rho < std::min(snp, 1.0))) {
            throw Error(ErrorCode::BadContourRadius,
                        "correction_integral: rho must satisfy 0 < rho < sqrt(n/p) = " +
                            std::to_string(snp) + ", got rho=" + std::to_string(rho));
        }
    }

    const cd one{1.0, 0.0};
    cd total{0.0, 0.0};
    for (int j = 0; j < nodes; ++j) {
        const double th = 2.0 * std::numbers::pi * double(j) / double(nodes);
        const cd m = std::polar(rho, th);
        const cd x = -m - one / m;
        cd fv;
        switch (f) {
            case CorrectionFn::F1: fv = x * x; break;
            case CorrectionFn::F2: fv = x; break;
            case CorrectionFn::F3: fv = (p / double(n)) * std::log(one + snp * x); break;
        }
        total += fv * chi_calib(m, n, p, nu4) * (one - m * m) / (m * m) * m;
    }
    total *= double(n) / double(nodes);

    const double imag = std::abs(total.imag());
    if (imag > 1e-8 * (1.0 + std::abs(total.real()))) {
        throw Error(ErrorCode::NonVanishingImaginaryPart,
                    "correction_integral: imaginary part " + std::to_string(imag) +
                        " did not vanish; branch selection is inconsistent on this contour");
    }
    return {total.real(), imag, rho, nodes};
}

ContourResult correction_integral(CorrectionFn f, int n, double p, double nu4) {
    return correction_integral(f, n, p, nu4, default_rho(f, n, p));
}

}  // namespace sphericity
