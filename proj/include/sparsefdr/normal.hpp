#pragma once

namespace sparsefdr {

/// Standard normal CDF via the complementary error function.
/// Absolute error is a few ulp of erfc, far below 1e-12 over |t| <= 38.
/// Throws std::invalid_argument on non-finite input.
double std_normal_cdf(double t);

/// Standard normal density.
double std_normal_pdf(double t);

/// Inverse of std_normal_cdf on (0,1). Rational initial guess (Acklam)
/// refined by Halley steps on the CDF; good deep into both tails
/// (u = 1e-300 round-trips to relative error well under 1e-9).
/// Throws std::invalid_argument if u is outside (0,1).
double std_normal_quantile(double u);

}  // namespace sparsefdr
