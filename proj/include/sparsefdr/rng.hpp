#pragma once

#include <cstdint>
#include <random>

namespace sparsefdr {

/// 64-bit mix (splitmix64 finalizer). Used to derive substream seeds.
std::uint64_t mix64(std::uint64_t x);

/// Deterministic random stream with explicit state. All draws are pure
/// functions of the stream, built from mt19937_64 output bits only, so
/// sequences are bit-identical across platforms and thread counts.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform draw strictly inside (0,1), 53-bit resolution.
    double uniform01();

    /// Unbiased uniform integer in [0, bound), bound >= 1.
    std::uint64_t uniform_below(std::uint64_t bound);

    /// Standard normal draw (Box-Muller, spare value cached per stream).
    double normal();

    /// Gamma(shape, scale 1), shape > 0. Marsaglia-Tsang with the
    /// power-of-uniform boost for shape < 1.
    double gamma(double shape);

    /// Chi-square draw with d > 0 degrees of freedom and noncentrality
    /// kappa >= 0.
    double chi_square(double d, double kappa = 0.0);

    /// Poisson draw, small means only (inversion by multiplication).
    std::uint64_t poisson(double mean);

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Deterministic, collision-resistant mapping (master seed, replicate
/// index) -> independent stream. Identical inputs give bit-identical
/// streams regardless of execution order or thread count.
Rng seeded_substream(std::uint64_t master_seed, std::uint64_t replicate_index);

}  // namespace sparsefdr
