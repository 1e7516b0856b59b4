#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sparsefdr/penalty.hpp"
#include "sparsefdr/rng.hpp"
#include "sparsefdr/sparse_vector.hpp"

namespace sparsefdr {

/// A realized Gaussian-design regression dataset y = X*truth + noise.
struct RegressionInstance {
    std::size_t n = 0;
    std::size_t p = 0;
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    SparseVector truth;
    std::uint64_t seed = 0;
};

/// One scored candidate model.
struct ModelScore {
    std::vector<std::size_t> subset;  // strictly increasing indices
    double rss = 0.0;
    double penalty_value = 0.0;
    double sc = 0.0;  // rss + penalty_value
};

enum class SearchKind { exhaustive, greedy_forward };

struct SearchMethod {
    SearchKind kind = SearchKind::exhaustive;
    /// Maximum number of subsets an exhaustive search may score.
    std::size_t guard_limit = 2'000'000;
};

struct RegressionEstimate {
    SparseVector beta_hat;
    ModelScore score;
    /// Set when the solution came from the greedy path rather than the
    /// exact minimizer.
    bool heuristic = false;
};

/// n x p matrix of independent standard normal entries drawn from rng.
Eigen::MatrixXd gaussian_design(std::size_t n, std::size_t p, Rng& rng);

/// Residual sum of squares of y after projecting onto the span of the
/// chosen columns, computed through a rank-revealing QR factorization
/// rather than the normal equations. Indices must be distinct but may
/// appear in any order (the projection is order-free). Throws
/// SingularityError (naming the subset) when the columns are rank
/// deficient.
double rss(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
           const std::vector<std::size_t>& subset);

/// Minimizes RSS(subset) + pe(|subset|) over models of size <= p_tilde.
/// Exhaustive search scores every subset (guarded by method.guard_limit;
/// ties go to the smallest subset, then lexicographic) and returns the
/// global minimizer; greedy_forward grows the model by best RSS drop and
/// returns the best-scoring prefix, flagged heuristic. beta_hat is the
/// least-squares fit on the selected columns, zero elsewhere.
RegressionEstimate solve_regression_penalized(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                              const LogFactorialPenalty& penalty,
                                              const SearchMethod& method);

/// Least-favorable spike vector: a uniformly random s-subset of {0..p-1}
/// set to sqrt(c*log(p/s)) (means scale, n absent) or sqrt(c*log(p/s)/n)
/// (regression scale, n present), all signs positive. Rejects s > p and
/// the degenerate s == p case where the magnitude collapses to zero.
SparseVector worst_case_beta(std::size_t p, std::size_t s, double c, std::optional<std::size_t> n,
                             Rng& rng);

}  // namespace sparsefdr
