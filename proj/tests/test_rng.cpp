#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "sparsefdr/rng.hpp"

using sparsefdr::Rng;
using sparsefdr::seeded_substream;

TEST_CASE("substreams are deterministic and separated") {
    Rng a = seeded_substream(42, 0);
    Rng b = seeded_substream(42, 0);
    Rng c = seeded_substream(42, 1);
    bool any_differ = false;
    for (int i = 0; i < 100; ++i) {
        const double va = a.normal();
        CHECK(va == b.normal());
        if (va != c.normal()) any_differ = true;
    }
    CHECK(any_differ);
}

TEST_CASE("uniform01 stays strictly inside the unit interval") {
    Rng rng = seeded_substream(7, 0);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform01();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("uniform_below is in range and hits every residue") {
    Rng rng = seeded_substream(7, 1);
    std::vector<int> counts(5, 0);
    for (int i = 0; i < 5000; ++i) {
        const std::uint64_t v = rng.uniform_below(5);
        REQUIRE(v < 5);
        ++counts[static_cast<std::size_t>(v)];
    }
    for (int c : counts) CHECK(c > 800);
    CHECK_THROWS_AS(rng.uniform_below(0), std::invalid_argument);
}

TEST_CASE("normal draws match the standard normal cdf") {
    Rng rng = seeded_substream(11, 3);
    const int draws = 200000;
    double sum = 0.0, sum_sq = 0.0;
    int below_zero = 0;
    for (int i = 0; i < draws; ++i) {
        const double z = rng.normal();
        sum += z;
        sum_sq += z * z;
        if (z < 0.0) ++below_zero;
    }
    const double mean = sum / draws;
    const double var = sum_sq / draws - mean * mean;
    CHECK(std::fabs(mean) < 0.01);              // ~4.5 sigma at this sample size
    CHECK(std::fabs(var - 1.0) < 0.02);
    CHECK(std::fabs(below_zero / static_cast<double>(draws) - 0.5) < 0.005);
}

TEST_CASE("chi-square sampler calibrates against the incomplete-gamma cdf") {
    struct Case {
        double d, kappa;
    };
    for (const Case cs : {Case{5.0, 0.0}, Case{1.0, 0.0}, Case{2.5, 0.0}, Case{0.7, 0.0}}) {
        Rng rng = seeded_substream(13, static_cast<std::uint64_t>(cs.d * 10));
        const double q90 = oracles::chi_square_quantile(0.9, cs.d);
        const int draws = 100000;
        int above = 0;
        double sum = 0.0;
        for (int i = 0; i < draws; ++i) {
            const double v = rng.chi_square(cs.d, cs.kappa);
            REQUIRE(v >= 0.0);
            sum += v;
            if (v > q90) ++above;
        }
        CHECK(std::fabs(sum / draws - cs.d) < 0.05 * std::max(1.0, cs.d));
        CHECK(std::fabs(above / static_cast<double>(draws) - 0.1) < 0.005);
    }
}

TEST_CASE("noncentral chi-square has mean d + kappa") {
    Rng rng = seeded_substream(17, 0);
    const double d = 5.0, kappa = 3.0;
    const int draws = 200000;
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) sum += rng.chi_square(d, kappa);
    CHECK(std::fabs(sum / draws - (d + kappa)) < 0.08);
    CHECK_THROWS_AS(rng.chi_square(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(rng.chi_square(1.0, -1.0), std::invalid_argument);
}
