#include "sparsefdr/diagnostics.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "sparsefdr/normal.hpp"

namespace sparsefdr {

SelectionDiagnostics diagnose(const SparseVector& estimate, const SparseVector& truth) {
    if (estimate.size() != truth.size())
        throw std::invalid_argument("diagnose: estimate and truth lengths differ");
    const std::size_t n = truth.size();

    SelectionDiagnostics d;
    std::size_t symdiff = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const bool in_est = estimate[i] != 0.0;
        const bool in_truth = truth[i] != 0.0;
        if (in_est && in_truth) ++d.tp;
        if (in_est && !in_truth) ++d.fp;
        if (!in_est && in_truth) ++d.fn_count;
        if (in_est != in_truth) ++symdiff;
        const double diff = estimate[i] - truth[i];
        d.l2_sq += diff * diff;
    }
    d.fdp = (d.fp + d.tp > 0) ? static_cast<double>(d.fp) / static_cast<double>(d.fp + d.tp) : 0.0;
    const std::size_t truth_size = d.tp + d.fn_count;
    d.symdiff_ratio =
        static_cast<double>(symdiff) / static_cast<double>(truth_size > 0 ? truth_size : 1);
    // FDP >= FP/n pointwise since the selected set never exceeds n.
    assert(d.fdp >= static_cast<double>(d.fp) / static_cast<double>(n) - 1e-15);
    return d;
}

BinomialFpLaw binomial_fp_oracle(std::size_t n, std::size_t s, double gamma) {
    if (n == 0) throw std::invalid_argument("binomial_fp_oracle: n must be positive");
    if (s >= n) throw std::invalid_argument("binomial_fp_oracle: requires s < n");
    if (!(gamma > 0.0)) throw std::invalid_argument("binomial_fp_oracle: gamma must be positive");

    BinomialFpLaw law;
    law.trial_count = n - s;
    const double cut = gamma * std::log(static_cast<double>(n) / static_cast<double>(s));
    law.success_prob = 2.0 * std_normal_cdf(-std::sqrt(cut));
    law.mean_fp = static_cast<double>(law.trial_count) * law.success_prob;
    return law;
}

LineFit fdr_rate_exponent(const std::vector<std::pair<double, double>>& mean_fp_by_ratio) {
    if (mean_fp_by_ratio.size() < 3)
        throw std::invalid_argument("fdr_rate_exponent: need at least 3 points");
    double sx = 0.0, sy = 0.0;
    for (const auto& [ratio, fdr] : mean_fp_by_ratio) {
        if (!(ratio > 0.0 && ratio < 1.0))
            throw std::invalid_argument("fdr_rate_exponent: sparsity ratio must lie in (0,1)");
        if (!(fdr > 0.0))
            throw std::invalid_argument("fdr_rate_exponent: fdr estimates must be positive");
        sx += std::log(ratio);
        sy += std::log(fdr);
    }
    const double m = static_cast<double>(mean_fp_by_ratio.size());
    const double mean_x = sx / m;
    const double mean_y = sy / m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [ratio, fdr] : mean_fp_by_ratio) {
        const double dx = std::log(ratio) - mean_x;
        const double dy = std::log(fdr) - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("fdr_rate_exponent: all ratios identical");

    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    fit.r_squared = (syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

}  // namespace sparsefdr
