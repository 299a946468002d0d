#pragma once

#include <complex>

namespace sphericity {

enum class CorrectionFn { F1, F2, F3 };  // x^2, x, (p/n) log(1 + sqrt(n/p) x)

const char* correction_fn_name(CorrectionFn f);

/// Calibrated root chi(m) = (-B + sqrt(B^2 - 4 A C_calib)) / (2 A) with
///   A = m - sqrt(n/p)(1 + m^2)
///   B = m^2 - 1 - (n/p) m (1 + 2 m^2)
///   C = (m^3/n)[nu4 - 2 + m^2/(1-m^2) - 2(nu4-1) m sqrt(n/p)] - sqrt(n/p) m^4
/// The square root takes the sign of Im(B); where Im(B) = 0 the root is
/// chosen continuous with its neighbourhood (sign of Re(B)), which keeps
/// chi on the bounded branch across the real axis. Evaluated in the
/// rationalized form -2C / (B (1 + sqrt(1 - 4AC/B^2))) so the bounded
/// root suffers no cancellation when |4AC/B^2| is tiny.
std::complex<double> chi_calib(std::complex<double> m, int n, double p, double nu4);

/// Smaller root of A(m) = 0, i.e. of m^2 - sqrt(p/n) m + 1; the nearest
/// singular point of the uncalibrated branch and the inner branch point
/// of log(1 + sqrt(n/p)(-m - 1/m)). Slightly above sqrt(n/p).
double a_root_inner(int n, double p);

/// Default contour radii. F1/F2 integrate strictly inside the inner
/// A-root (rho < sqrt(n/p)); F3's integrand is only single-valued when
/// the contour encloses that point, so its default sits outside it.
double default_rho(CorrectionFn f, int n, double p);

struct ContourResult {
    double value;             // real part of the quadrature
    double imag_diagnostic;   // |imaginary part|, should be ~0
    double rho;
    int nodes;
};

/// Trapezoidal quadrature of (n / 2 pi i) * contour integral of
/// f(-m - 1/m) chi(m) (1 - m^2)/m^2 dm over |m| = rho. The integrand is
/// analytic in a neighbourhood of the contour, so the periodic
/// trapezoid converges geometrically in the node count.
///
/// Closed-form targets: F1 -> nu4 - 2 (exact), F2 -> 0 (exact),
/// F3 -> -(nu4-2)/2 + n^2/(3p) up to o(n^2/p).
ContourResult correction_integral(CorrectionFn f, int n, double p, double nu4, double rho,
                                  int nodes = 4096);

/// Convenience overload using default_rho.
ContourResult correction_integral(CorrectionFn f, int n, double p, double nu4);

}  // namespace sphericity
