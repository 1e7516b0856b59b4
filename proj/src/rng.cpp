#include "sparsefdr/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sparsefdr {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng seeded_substream(std::uint64_t master_seed, std::uint64_t replicate_index) {
    return Rng(mix64(mix64(master_seed) ^ mix64(replicate_index + 0x5851F42D4C957F2DULL)));
}

double Rng::uniform01() {
    // 53 random bits mapped to (0,1); the +0.5 offset keeps both ends open.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return v % bound;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

double Rng::gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be positive");
    if (shape < 1.0) {
        const double boost = std::pow(uniform01(), 1.0 / shape);
        return gamma(shape + 1.0) * boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double Rng::chi_square(double d, double kappa) {
    if (!(d > 0.0)) throw std::invalid_argument("chi_square: d must be positive");
    if (kappa < 0.0) throw std::invalid_argument("chi_square: kappa must be nonnegative");
    if (kappa > 0.0 && d < 1.0) {
        // Poisson mixture representation covers the fractional-d corner.
        const std::uint64_t j = poisson(0.5 * kappa);
        return chi_square(d + 2.0 * static_cast<double>(j), 0.0);
    }
    double value = 0.0;
    double rest = d;
    if (kappa > 0.0 || d >= 1.0) {
        const double z = normal() + std::sqrt(kappa);
        value = z * z;
        rest = d - 1.0;
    }
    if (rest > 0.0) value += 2.0 * gamma(0.5 * rest);
    return value;
}

std::uint64_t Rng::poisson(double mean) {
    if (mean < 0.0) throw std::invalid_argument("poisson: mean must be nonnegative");
    if (mean > 50.0) throw std::invalid_argument("poisson: only small means supported");
    const double threshold = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = uniform01();
    while (prod > threshold) {
        ++k;
        prod *= uniform01();
    }
    return k;
}

}  // namespace sparsefdr
