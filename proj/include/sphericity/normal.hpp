#pragma once

namespace sphericity {

/// Standard normal CDF, accurate to ~1e-16 absolute on |z| <= 8.
double normal_cdf(double z);

/// One-sided upper p-value, 1 - Phi(z). Accurate in the upper tail
/// (computed through erfc, not through 1 - cdf).
double normal_upper_p(double z);

/// Inverse of the standard normal CDF (Wichura's PPND16 rational
/// approximations). Relative accuracy about 1e-15 on (0,1).
double normal_quantile(double u);

/// Upper alpha quantile: z such that P(Z > z) = alpha.
double normal_upper_quantile(double alpha);

}  // namespace sphericity
