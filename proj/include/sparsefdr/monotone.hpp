#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "sparsefdr/means.hpp"
#include "sparsefdr/rng.hpp"
#include "sparsefdr/sparse_vector.hpp"

namespace sparsefdr {

/// Coordinatewise dominance with sign agreement: true iff for every i,
/// sign(y_i)*sign(z_i) >= 0 and |y_i| >= |z_i| (sign(0) = 0, so a zero on
/// either side satisfies the sign condition). Throws on length mismatch.
bool majorizes(const SparseVector& y, const SparseVector& z);

/// Draws a pair with majorizes(y, z) true by construction: z is
/// base_truth plus unit normal noise, and y multiplies each coordinate of
/// z by an independent factor 1 + inflation_scale * Exp(1). Multiplicative
/// inflation keeps signs intact, which additive bumps would not.
std::pair<SparseVector, SparseVector> sample_majorizing_pair(const SparseVector& base_truth,
                                                             Rng& rng,
                                                             double inflation_scale = 1.0);

using MeansEstimatorFn = std::function<MeansEstimate(const SparseVector&)>;

struct MonotoneReport {
    std::size_t trials = 0;
    std::size_t value_violations = 0;
    std::size_t selection_violations = 0;
    /// Lowest-index violating pair (y, z); set for value or selection
    /// violations alike.
    std::optional<std::pair<SparseVector, SparseVector>> first_counterexample;
};

struct AuditOptions {
    std::size_t trials = 1000;
    std::size_t n = 50;
    std::uint64_t seed = 0;
    /// Truth used by the pair generator; zeros(n) when empty.
    SparseVector base_truth;
    double inflation_scale = 1.0;
    /// Pairs audited before any random trial (each must satisfy
    /// majorizes(first, second)); counted toward MonotoneReport::trials.
    std::vector<std::pair<SparseVector, SparseVector>> injected_pairs;
};

/// Randomized falsification of estimator monotonicity. For each audited
/// pair (y majorizes z) it counts a value violation when beta_hat(y) fails
/// to majorize beta_hat(z) and a selection violation when the support of
/// beta_hat(z) is not contained in the support of beta_hat(y). Each pair
/// contributes at most one count of each kind. Per-trial randomness is
/// drawn from seeded_substream(seed, trial), so results do not depend on
/// evaluation order. A clean report certifies only "no violation found".
MonotoneReport audit_monotonicity(const MeansEstimatorFn& estimator, const AuditOptions& options);

/// The two-coordinate construction that exhibits the non-monotone
/// selection of counterexample_estimate at dimension n: returns (y, z)
/// with y majorizing z, where the estimator selects {0,1} on z but only
/// {1} on y. Requires n >= 2 and gamma > 0.
std::pair<SparseVector, SparseVector> shrinking_selection_pair(std::size_t n, double gamma);

}  // namespace sparsefdr
