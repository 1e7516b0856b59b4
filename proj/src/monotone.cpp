#include "sparsefdr/monotone.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace sparsefdr {

bool majorizes(const SparseVector& y, const SparseVector& z) {
    if (y.size() != z.size()) throw std::invalid_argument("majorizes: lengths differ");
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] * z[i] < 0.0) return false;
        if (std::fabs(y[i]) < std::fabs(z[i])) return false;
    }
    return true;
}

std::pair<SparseVector, SparseVector> sample_majorizing_pair(const SparseVector& base_truth,
                                                             Rng& rng, double inflation_scale) {
    if (inflation_scale < 0.0)
        throw std::invalid_argument("sample_majorizing_pair: inflation_scale must be >= 0");
    const std::size_t n = base_truth.size();
    SparseVector z = SparseVector::zeros(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = base_truth[i] + rng.normal();
    SparseVector y = z;
    for (std::size_t i = 0; i < n; ++i) {
        const double factor = 1.0 - inflation_scale * std::log(rng.uniform01());
        y[i] = z[i] * factor;
    }
    return {std::move(y), std::move(z)};
}

namespace {

bool support_contained(const SparseVector& inner, const SparseVector& outer) {
    for (std::size_t i = 0; i < inner.size(); ++i)
        if (inner[i] != 0.0 && outer[i] == 0.0) return false;
    return true;
}

}  // namespace

MonotoneReport audit_monotonicity(const MeansEstimatorFn& estimator, const AuditOptions& options) {
    if (options.trials == 0) throw std::invalid_argument("audit_monotonicity: trials must be positive");
    if (options.n == 0) throw std::invalid_argument("audit_monotonicity: n must be positive");
    if (!estimator) throw std::invalid_argument("audit_monotonicity: estimator not set");
    SparseVector base = options.base_truth;
    if (base.size() == 0) base = SparseVector::zeros(options.n);
    if (base.size() != options.n)
        throw std::invalid_argument("audit_monotonicity: base_truth length must equal n");

    MonotoneReport report;
    report.trials = options.injected_pairs.size() + options.trials;

    auto examine = [&](const SparseVector& y, const SparseVector& z) {
        assert(majorizes(y, z));
        const MeansEstimate est_y = estimator(y);
        const MeansEstimate est_z = estimator(z);
        const bool value_bad = !majorizes(est_y.beta_hat, est_z.beta_hat);
        const bool selection_bad = !support_contained(est_z.beta_hat, est_y.beta_hat);
        if (value_bad) ++report.value_violations;
        if (selection_bad) ++report.selection_violations;
        if ((value_bad || selection_bad) && !report.first_counterexample)
            report.first_counterexample = std::make_pair(y, z);
    };

    for (const auto& [y, z] : options.injected_pairs) {
        if (!majorizes(y, z))
            throw std::invalid_argument("audit_monotonicity: injected pair must majorize");
        examine(y, z);
    }
    for (std::size_t t = 0; t < options.trials; ++t) {
        Rng rng = seeded_substream(options.seed, t);
        const auto [y, z] = sample_majorizing_pair(base, rng, options.inflation_scale);
        examine(y, z);
    }
    // A support non-inclusion forces a majorization failure at the same
    // coordinate, so selection violations never outnumber value ones.
    assert(report.value_violations >= report.selection_violations);
    return report;
}

std::pair<SparseVector, SparseVector> shrinking_selection_pair(std::size_t n, double gamma) {
    if (n < 2) throw std::invalid_argument("shrinking_selection_pair: need n >= 2");
    if (!(gamma > 0.0)) throw std::invalid_argument("shrinking_selection_pair: gamma must be positive");
    // Magnitudes around the count threshold gamma*log(n): both z entries sit
    // below it but high enough that keeping the pair beats the size-2
    // penalty gamma*(log n + log(n/2)); inflating the second entry past the
    // threshold makes the penalty on the first alone no longer worth it.
    const double top = gamma * std::log(static_cast<double>(n));
    const double floor = 0.5 * gamma * (std::log(static_cast<double>(n)) +
                                        std::log(static_cast<double>(n) / 2.0));
    const double a1 = std::sqrt(floor + 0.75 * (top - floor));
    const double a2 = std::sqrt(floor + 0.50 * (top - floor));
    const double a3 = std::sqrt(1.5 * top);

    SparseVector z = SparseVector::zeros(n);
    z[0] = a1;
    z[1] = a2;
    SparseVector y = z;
    y[1] = a3;
    return {std::move(y), std::move(z)};
}

}  // namespace sparsefdr
