#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sparsefdr {

/// Log-factorial model-size penalty pe(k) = gamma * sum_{i=1..k} log(p/i),
/// with pe(k) = +infinity once k exceeds the search cap p_tilde.
/// Increments gamma*log(p/k) are positive and strictly decreasing in k
/// (for p >= 2), so pe is increasing and concave over the search range.
struct LogFactorialPenalty {
    double gamma;
    std::size_t p_ambient;
    std::size_t p_tilde;

    LogFactorialPenalty(double gamma_, std::size_t p_ambient_, std::size_t p_tilde_)
        : gamma(gamma_), p_ambient(p_ambient_), p_tilde(p_tilde_) {
        if (!(gamma > 0.0)) throw std::invalid_argument("LogFactorialPenalty: gamma must be positive");
        if (p_ambient == 0) throw std::invalid_argument("LogFactorialPenalty: p_ambient must be positive");
        if (p_tilde == 0 || p_tilde > p_ambient)
            throw std::invalid_argument("LogFactorialPenalty: p_tilde must lie in [1, p_ambient]");
    }

    /// pe(k) - pe(k-1) for 1 <= k <= p_tilde.
    double increment(std::size_t k) const {
        if (k == 0 || k > p_tilde) throw std::invalid_argument("increment: k out of range");
        return gamma * std::log(static_cast<double>(p_ambient) / static_cast<double>(k));
    }

    double value(std::size_t k) const {
        if (k > p_tilde) return std::numeric_limits<double>::infinity();
        double pe = 0.0;
        for (std::size_t i = 1; i <= k; ++i) pe += increment(i);
        return pe;
    }

    /// pe(0), pe(1), ..., pe(upto); upto must not exceed p_tilde.
    std::vector<double> prefix(std::size_t upto) const {
        if (upto > p_tilde) throw std::invalid_argument("prefix: upto exceeds p_tilde");
        std::vector<double> pe(upto + 1, 0.0);
        for (std::size_t k = 1; k <= upto; ++k) pe[k] = pe[k - 1] + increment(k);
        return pe;
    }
};

}  // namespace sparsefdr
