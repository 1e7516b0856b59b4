#include "sparsefdr/chi_square.hpp"

#include <cmath>
#include <stdexcept>

namespace sparsefdr {

ChiSquareBound chi_square_tail(double d, double kappa, double x) {
    if (!(d > 0.0)) throw std::invalid_argument("chi_square_tail: d must be positive");
    if (!(kappa >= 0.0)) throw std::invalid_argument("chi_square_tail: kappa must be nonnegative");
    if (!(x > 0.0)) throw std::invalid_argument("chi_square_tail: x must be positive");
    const double spread = std::sqrt((4.0 * d + 8.0 * kappa) * x);
    return ChiSquareBound{d, kappa, x, d + kappa + 2.0 * x + spread, d + kappa - spread};
}

}  // namespace sparsefdr
