#pragma once

#include <cstddef>
#include <vector>

#include "sparsefdr/penalty.hpp"
#include "sparsefdr/sparse_vector.hpp"

namespace sparsefdr {

/// Result of a normal-means estimator: the coefficient estimate, the
/// selected model size, and the value of the minimized criterion (each
/// estimator here admits an L0-penalized or constrained objective).
struct MeansEstimate {
    SparseVector beta_hat;
    std::size_t selected_k = 0;
    double objective_value = 0.0;
};

/// Indices of y ordered by |y| descending, ties by ascending index.
std::vector<std::size_t> abs_descending_order(const SparseVector& y);

/// Hard thresholding calibrated at sparsity s: keeps y_i iff
/// y_i^2 >= gamma * log(n/s) (inclusive). Requires 1 <= s < n.
MeansEstimate hard_threshold(const SparseVector& y, double gamma, std::size_t s);

/// Fixed-threshold selection: keeps y_i iff |y_i| > t (strict). t > 0.
MeansEstimate fixed_threshold(const SparseVector& y, double t);

/// Minimizes ||y - theta||^2 + pe(||theta||_0) over top-k supports,
/// k in [0, p_tilde], i.e. the global minimum of
///   S'(k) = sum_{l>k} y^2_(l) + sum_{l<=k} gamma*log(n/l)
/// on the |y|-descending order. Smallest k wins ties. O(n log n).
/// Requires penalty.p_ambient == y.size() and p_tilde <= y.size().
MeansEstimate solve_means_log_factorial(const SparseVector& y, const LogFactorialPenalty& penalty);

/// Step-up FDR selection at level q in (0,1): k_hat is the rightmost
/// local minimum of
///   S(k) = sum_{l>k} y^2_(l) + sum_{l<=k} [Phi^{-1}(1 - q*l/2n)]^2
/// with boundary sentinels S(-1) = S(n+1) = +infinity and weak
/// comparisons on both sides; the estimate keeps the k_hat largest
/// coordinates by |y|.
MeansEstimate bh_stepup(const SparseVector& y, double q);

/// Count-thresholded penalized estimator: minimizes
///   ||y - beta||^2 + gamma * sum_{i=1..m} log(n/i),
/// where m counts the selected coordinates with beta_j^2 < gamma*log(n),
/// over the per-coordinate candidate grid beta_j in {0, y_j}. Exact zeros
/// never enter the count; coordinates at or above gamma*log(n) are always
/// kept and never counted. Requires n >= 2. Selection here is not
/// monotone in the data: inflating one coordinate past the count
/// threshold can shrink the selected set.
MeansEstimate counterexample_estimate(const SparseVector& y, double gamma);

/// Keeps exactly the s_star coordinates of largest |y| (ties by index).
MeansEstimate top_s_oracle(const SparseVector& y, std::size_t s_star);

}  // namespace sparsefdr
