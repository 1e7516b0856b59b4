#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sparsefdr/sparse_vector.hpp"

namespace sparsefdr {

/// Selection and estimation-error metrics for one (estimate, truth) pair.
/// fdp uses the 0/0 = 0 convention: no discoveries means no false ones.
struct SelectionDiagnostics {
    std::size_t fp = 0;
    std::size_t tp = 0;
    std::size_t fn_count = 0;
    double fdp = 0.0;
    double l2_sq = 0.0;
    double symdiff_ratio = 0.0;
};

/// Compares supports exactly (zero means exact 0.0) and accumulates the
/// squared L2 error. Throws on length mismatch.
SelectionDiagnostics diagnose(const SparseVector& estimate, const SparseVector& truth);

/// Exact false-positive law of hard thresholding calibrated at sparsity s
/// on an n-dimensional null block: FP ~ Bin(n - s, 2*Phi(-sqrt(gamma*log(n/s)))).
struct BinomialFpLaw {
    std::size_t trial_count = 0;
    double success_prob = 0.0;
    double mean_fp = 0.0;
};

BinomialFpLaw binomial_fp_oracle(std::size_t n, std::size_t s, double gamma);

/// Ordinary least squares of log(fdr) on log(sparsity ratio).
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Points are (sparsity_ratio, fdr_estimate) pairs; needs at least three
/// points, all ratios in (0,1) and all fdr estimates strictly positive
/// (callers drop or floor zero-FDR points before fitting).
LineFit fdr_rate_exponent(const std::vector<std::pair<double, double>>& mean_fp_by_ratio);

}  // namespace sparsefdr
