#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "sparsefdr/normal.hpp"

using sparsefdr::std_normal_cdf;
using sparsefdr::std_normal_quantile;

TEST_CASE("normal cdf pinned values") {
    CHECK(std_normal_cdf(0.0) == 0.5);
    // Frozen from the quadrature oracle: Phi(-1.959963985) = 0.025.
    CHECK(std::fabs(std_normal_cdf(-1.959963985) - 0.025) <= 1e-9);
    CHECK(std::fabs(std_normal_cdf(38.0) - 1.0) <= 1e-15);
    CHECK(std_normal_cdf(-38.0) < 1e-300);
}

TEST_CASE("normal cdf matches quadrature over the working range") {
    for (double t = -38.0; t <= 38.0; t += 0.5) {
        const double expected = oracles::normal_cdf_quadrature(t);
        CHECK(std::fabs(std_normal_cdf(t) - expected) <= 1e-12);
    }
}

TEST_CASE("normal cdf is monotone and total on finite reals") {
    double prev = 0.0;
    for (int i = 0; i <= 20000; ++i) {
        const double t = -40.0 + i * (80.0 / 20000.0);
        const double v = std_normal_cdf(t);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK_THROWS_AS(std_normal_cdf(std::numeric_limits<double>::quiet_NaN()),
                    std::invalid_argument);
    CHECK_THROWS_AS(std_normal_cdf(std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
}

TEST_CASE("normal quantile pinned values") {
    CHECK(std_normal_quantile(0.5) == 0.0);
    // Frozen from the bisection oracle on the cdf.
    const double z975 = oracles::quantile_bisection(std_normal_cdf, 0.975);
    CHECK(std::fabs(std_normal_quantile(0.975) - 1.959963985) <= 1e-6);
    CHECK(std::fabs(std_normal_quantile(0.975) - z975) <= 1e-9);

    CHECK_THROWS_AS(std_normal_quantile(0.0), std::invalid_argument);
    CHECK_THROWS_AS(std_normal_quantile(1.0), std::invalid_argument);
    CHECK_THROWS_AS(std_normal_quantile(-0.1), std::invalid_argument);
}

TEST_CASE("normal quantile survives the deep lower tail") {
    const double x = std_normal_quantile(1e-300);
    CHECK(std::isfinite(x));
    CHECK(x < -37.0);
    const double back = std_normal_cdf(x);
    CHECK(std::fabs(back - 1e-300) <= 1e-9 * 1e-300);
}

TEST_CASE("cdf and quantile are mutual inverses on a dense grid") {
    // 1000 log-spaced points covering (1e-12, 1-1e-12).
    for (int i = 0; i < 1000; ++i) {
        const double frac = static_cast<double>(i) / 999.0;
        double u;
        if (i % 2 == 0)
            u = std::pow(10.0, -12.0 + 11.7 * frac);  // low side
        else
            u = 1.0 - std::pow(10.0, -12.0 + 11.7 * frac);
        const double x = std_normal_quantile(u);
        CHECK(std::fabs(std_normal_cdf(x) - u) <= 1e-9);
    }
    double prev = -std::numeric_limits<double>::infinity();
    for (double u = 0.001; u < 1.0; u += 0.001) {
        const double x = std_normal_quantile(u);
        CHECK(x > prev);
        prev = x;
    }
}
