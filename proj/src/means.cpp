#include "sparsefdr/means.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sparsefdr/normal.hpp"

namespace sparsefdr {

namespace {

MeansEstimate finish(SparseVector beta, double objective) {
    MeansEstimate est;
    est.selected_k = beta.support_size();
    est.beta_hat = std::move(beta);
    est.objective_value = objective;
    return est;
}

// Sum of squares of y over ranks k+1..n of the given order, for k = 0..n.
// Accumulated backwards so each suffix is a plain left-to-right sum of the
// smallest entries.
std::vector<double> suffix_squares(const SparseVector& y, const std::vector<std::size_t>& order) {
    const std::size_t n = order.size();
    std::vector<double> suffix(n + 1, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        const double v = y[order[k]];
        suffix[k] = suffix[k + 1] + v * v;
    }
    return suffix;
}

}  // namespace

std::vector<std::size_t> abs_descending_order(const SparseVector& y) {
    std::vector<std::size_t> order(y.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double fa = std::fabs(y[a]);
        const double fb = std::fabs(y[b]);
        if (fa != fb) return fa > fb;
        return a < b;
    });
    return order;
}

MeansEstimate hard_threshold(const SparseVector& y, double gamma, std::size_t s) {
    const std::size_t n = y.size();
    if (n == 0) throw std::invalid_argument("hard_threshold: empty input");
    if (!(gamma > 0.0)) throw std::invalid_argument("hard_threshold: gamma must be positive");
    if (s < 1 || s >= n)
        throw std::invalid_argument("hard_threshold: s must satisfy 1 <= s < n");
    const double cut = gamma * std::log(static_cast<double>(n) / static_cast<double>(s));

    SparseVector beta = SparseVector::zeros(n);
    double dropped = 0.0;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (y[i] * y[i] >= cut) {
            beta[i] = y[i];
            ++kept;
        } else {
            dropped += y[i] * y[i];
        }
    }
    return finish(std::move(beta), dropped + cut * static_cast<double>(kept));
}

MeansEstimate fixed_threshold(const SparseVector& y, double t) {
    const std::size_t n = y.size();
    if (n == 0) throw std::invalid_argument("fixed_threshold: empty input");
    if (!(t > 0.0)) throw std::invalid_argument("fixed_threshold: t must be positive");

    SparseVector beta = SparseVector::zeros(n);
    double dropped = 0.0;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::fabs(y[i]) > t) {
            beta[i] = y[i];
            ++kept;
        } else {
            dropped += y[i] * y[i];
        }
    }
    return finish(std::move(beta), dropped + t * t * static_cast<double>(kept));
}

MeansEstimate solve_means_log_factorial(const SparseVector& y, const LogFactorialPenalty& penalty) {
    const std::size_t n = y.size();
    if (n == 0) throw std::invalid_argument("solve_means_log_factorial: empty input");
    if (penalty.p_ambient != n)
        throw std::invalid_argument("solve_means_log_factorial: penalty.p_ambient must equal n");
    if (penalty.p_tilde > n)
        throw std::invalid_argument("solve_means_log_factorial: p_tilde must not exceed n");

    const auto order = abs_descending_order(y);
    const auto suffix = suffix_squares(y, order);
    const auto pe = penalty.prefix(penalty.p_tilde);

    std::size_t best_k = 0;
    double best_value = suffix[0];
    for (std::size_t k = 1; k <= penalty.p_tilde; ++k) {
        const double value = suffix[k] + pe[k];
        if (value < best_value) {
            best_value = value;
            best_k = k;
        }
    }

    SparseVector beta = SparseVector::zeros(n);
    for (std::size_t l = 0; l < best_k; ++l) beta[order[l]] = y[order[l]];
    return finish(std::move(beta), best_value);
}

MeansEstimate bh_stepup(const SparseVector& y, double q) {
    const std::size_t n = y.size();
    if (n == 0) throw std::invalid_argument("bh_stepup: empty input");
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("bh_stepup: q must lie in (0,1)");

    const auto order = abs_descending_order(y);
    const auto suffix = suffix_squares(y, order);

    std::vector<double> s_curve(n + 1);
    s_curve[0] = suffix[0];
    double penalty_sum = 0.0;
    for (std::size_t l = 1; l <= n; ++l) {
        const double lambda =
            std_normal_quantile(1.0 - q * static_cast<double>(l) / (2.0 * static_cast<double>(n)));
        penalty_sum += lambda * lambda;
        s_curve[l] = suffix[l] + penalty_sum;
    }

    // Rightmost local minimum, sentinels S(-1) = S(n+1) = +infinity.
    std::size_t k_hat = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        const bool left_ok = (k == 0) || (s_curve[k] <= s_curve[k - 1]);
        const bool right_ok = (k == n) || (s_curve[k] <= s_curve[k + 1]);
        if (left_ok && right_ok) k_hat = k;
    }

    SparseVector beta = SparseVector::zeros(n);
    for (std::size_t l = 0; l < k_hat; ++l) beta[order[l]] = y[order[l]];
    return finish(std::move(beta), s_curve[k_hat]);
}

MeansEstimate counterexample_estimate(const SparseVector& y, double gamma) {
    const std::size_t n = y.size();
    if (n < 2) throw std::invalid_argument("counterexample_estimate: need n >= 2");
    if (!(gamma > 0.0)) throw std::invalid_argument("counterexample_estimate: gamma must be positive");
    const double cut = gamma * std::log(static_cast<double>(n));

    // Coordinates at or above the count threshold cost nothing to keep and
    // never enter the penalty count, so they are always selected.
    SparseVector beta = SparseVector::zeros(n);
    std::vector<std::size_t> small;
    for (std::size_t i = 0; i < n; ++i) {
        const double sq = y[i] * y[i];
        if (sq >= cut) {
            beta[i] = y[i];
        } else if (sq > 0.0) {
            small.push_back(i);
        }
    }
    std::sort(small.begin(), small.end(), [&](std::size_t a, std::size_t b) {
        const double fa = std::fabs(y[a]);
        const double fb = std::fabs(y[b]);
        if (fa != fb) return fa > fb;
        return a < b;
    });

    // For a fixed count k the cheapest choice keeps the k largest small
    // coordinates, so scan prefixes: T(k) = dropped squares + penalty(k).
    const std::size_t m = small.size();
    std::vector<double> small_suffix(m + 1, 0.0);
    for (std::size_t k = m; k-- > 0;) {
        const double v = y[small[k]];
        small_suffix[k] = small_suffix[k + 1] + v * v;
    }
    std::size_t best_k = 0;
    double best_value = small_suffix[0];
    double pe = 0.0;
    for (std::size_t k = 1; k <= m; ++k) {
        pe += gamma * std::log(static_cast<double>(n) / static_cast<double>(k));
        const double value = small_suffix[k] + pe;
        if (value < best_value) {
            best_value = value;
            best_k = k;
        }
    }
    for (std::size_t l = 0; l < best_k; ++l) beta[small[l]] = y[small[l]];
    return finish(std::move(beta), best_value);
}

MeansEstimate top_s_oracle(const SparseVector& y, std::size_t s_star) {
    const std::size_t n = y.size();
    if (n == 0) throw std::invalid_argument("top_s_oracle: empty input");
    if (s_star < 1 || s_star > n)
        throw std::invalid_argument("top_s_oracle: s_star must satisfy 1 <= s_star <= n");

    const auto order = abs_descending_order(y);
    SparseVector beta = SparseVector::zeros(n);
    for (std::size_t l = 0; l < s_star; ++l) beta[order[l]] = y[order[l]];
    double dropped = 0.0;
    for (std::size_t l = s_star; l < n; ++l) dropped += y[order[l]] * y[order[l]];
    return finish(std::move(beta), dropped);
}

}  // namespace sparsefdr
