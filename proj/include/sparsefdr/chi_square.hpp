#pragma once

namespace sparsefdr {

/// Deviation points of the chi-square concentration inequality
/// (Laurent-Massart form): for X ~ chi2_d(kappa),
///   Pr(X > d + kappa + 2x + sqrt((4d+8kappa)x)) <= exp(-x)
///   Pr(X < d + kappa - sqrt((4d+8kappa)x))      <= exp(-x).
/// Raw points are returned unclamped; a negative lower point just means
/// the lower bound is vacuous there.
struct ChiSquareBound {
    double d;
    double kappa;
    double x;
    double upper_tail_point;
    double lower_tail_point;
};

/// Evaluates both deviation points. Requires d > 0, kappa >= 0, x > 0.
ChiSquareBound chi_square_tail(double d, double kappa, double x);

}  // namespace sparsefdr
