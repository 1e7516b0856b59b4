#include "sparsefdr/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sparsefdr/errors.hpp"

namespace sparsefdr {

namespace {

std::string subset_label(const std::vector<std::size_t>& subset) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < subset.size(); ++i) out << (i ? "," : "") << subset[i];
    out << "}";
    return out.str();
}

// Number of subsets of size <= p_tilde, saturating instead of overflowing.
std::size_t subset_budget(std::size_t p, std::size_t p_tilde) {
    constexpr std::size_t kSaturated = std::size_t{1} << 62;
    double total = 0.0;
    for (std::size_t k = 0; k <= p_tilde; ++k) {
        double binom = 1.0;
        for (std::size_t i = 0; i < k; ++i)
            binom *= static_cast<double>(p - i) / static_cast<double>(i + 1);
        total += binom;
        if (total >= static_cast<double>(kSaturated)) return kSaturated;
    }
    return static_cast<std::size_t>(std::llround(total));
}

// Lexicographic successor of a size-k index combination out of p.
bool next_combination(std::vector<std::size_t>& idx, std::size_t p) {
    const std::size_t k = idx.size();
    if (k == 0) return false;
    std::size_t i = k;
    while (i-- > 0) {
        if (idx[i] + (k - i) < p) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

Eigen::MatrixXd gather_columns(const Eigen::MatrixXd& X, const std::vector<std::size_t>& subset) {
    Eigen::MatrixXd sub(X.rows(), static_cast<Eigen::Index>(subset.size()));
    for (std::size_t j = 0; j < subset.size(); ++j)
        sub.col(static_cast<Eigen::Index>(j)) = X.col(static_cast<Eigen::Index>(subset[j]));
    return sub;
}

SparseVector ols_on_subset(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           const std::vector<std::size_t>& subset) {
    SparseVector beta = SparseVector::zeros(static_cast<std::size_t>(X.cols()));
    if (subset.empty()) return beta;
    const Eigen::MatrixXd sub = gather_columns(X, subset);
    const Eigen::VectorXd coef = sub.colPivHouseholderQr().solve(y);
    for (std::size_t j = 0; j < subset.size(); ++j)
        beta[subset[j]] = coef(static_cast<Eigen::Index>(j));
    return beta;
}

}  // namespace

Eigen::MatrixXd gaussian_design(std::size_t n, std::size_t p, Rng& rng) {
    if (n == 0 || p == 0) throw std::invalid_argument("gaussian_design: n and p must be positive");
    Eigen::MatrixXd X(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
    // Filled column by column; the draw order is part of the contract.
    for (Eigen::Index j = 0; j < X.cols(); ++j)
        for (Eigen::Index i = 0; i < X.rows(); ++i) X(i, j) = rng.normal();
    return X;
}

double rss(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
           const std::vector<std::size_t>& subset) {
    if (X.rows() != y.size()) throw std::invalid_argument("rss: X and y row counts differ");
    std::vector<bool> seen(static_cast<std::size_t>(X.cols()), false);
    for (const std::size_t j : subset) {
        if (j >= static_cast<std::size_t>(X.cols()))
            throw std::invalid_argument("rss: subset index out of range");
        if (seen[j]) throw std::invalid_argument("rss: subset indices must be distinct");
        seen[j] = true;
    }
    if (subset.empty()) return y.squaredNorm();
    if (subset.size() > static_cast<std::size_t>(X.rows()))
        throw SingularityError("rss: subset " + subset_label(subset) + " has more columns than rows");

    const Eigen::MatrixXd sub = gather_columns(X, subset);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
    if (qr.rank() < sub.cols())
        throw SingularityError("rss: rank-deficient design columns " + subset_label(subset));
    const Eigen::VectorXd residual = y - sub * qr.solve(y);
    return residual.squaredNorm();
}

namespace {

RegressionEstimate solve_exhaustive(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                    const LogFactorialPenalty& penalty,
                                    const SearchMethod& method) {
    const std::size_t p = static_cast<std::size_t>(X.cols());
    const std::size_t required = subset_budget(p, penalty.p_tilde);
    if (required > method.guard_limit) {
        std::ostringstream msg;
        msg << "solve_regression_penalized: exhaustive search needs " << required
            << " scored subsets but guard_limit is " << method.guard_limit;
        throw BudgetError(msg.str(), required);
    }
    const auto pe = penalty.prefix(penalty.p_tilde);

    ModelScore best;
    best.rss = y.squaredNorm();
    best.penalty_value = 0.0;
    best.sc = best.rss;
    for (std::size_t k = 1; k <= penalty.p_tilde; ++k) {
        std::vector<std::size_t> subset(k);
        for (std::size_t j = 0; j < k; ++j) subset[j] = j;
        do {
            const double r = rss(X, y, subset);
            const double sc = r + pe[k];
            // Strict improvement only: scanning sizes upward in
            // lexicographic order makes ties resolve to the smallest,
            // lexicographically first subset.
            if (sc < best.sc) {
                best.subset = subset;
                best.rss = r;
                best.penalty_value = pe[k];
                best.sc = sc;
            }
        } while (next_combination(subset, p));
    }

    RegressionEstimate est;
    est.beta_hat = ols_on_subset(X, y, best.subset);
    est.score = std::move(best);
    est.heuristic = false;
    return est;
}

RegressionEstimate solve_greedy(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                const LogFactorialPenalty& penalty) {
    const std::size_t n = static_cast<std::size_t>(X.rows());
    const std::size_t p = static_cast<std::size_t>(X.cols());
    const auto pe = penalty.prefix(penalty.p_tilde);
    const std::size_t max_k = std::min(penalty.p_tilde, n);

    // Forward pass with an incremental orthonormal basis: the candidate
    // gaining the largest RSS drop joins the model at each step.
    Eigen::MatrixXd basis(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(max_k));
    Eigen::VectorXd residual = y;
    std::vector<bool> used(p, false);
    std::vector<std::size_t> path;
    std::vector<double> path_rss;
    path_rss.push_back(residual.squaredNorm());

    for (std::size_t step = 0; step < max_k; ++step) {
        std::size_t best_j = p;
        double best_gain = -1.0;
        Eigen::VectorXd best_dir;
        for (std::size_t j = 0; j < p; ++j) {
            if (used[j]) continue;
            Eigen::VectorXd v = X.col(static_cast<Eigen::Index>(j));
            if (step > 0) {
                const auto q = basis.leftCols(static_cast<Eigen::Index>(step));
                v -= q * (q.transpose() * v);
            }
            const double norm_sq = v.squaredNorm();
            if (norm_sq <= 1e-12 * X.col(static_cast<Eigen::Index>(j)).squaredNorm()) continue;
            const double proj = v.dot(residual);
            const double gain = proj * proj / norm_sq;
            if (gain > best_gain) {
                best_gain = gain;
                best_j = j;
                best_dir = v / std::sqrt(norm_sq);
            }
        }
        if (best_j == p) break;  // nothing independent left
        used[best_j] = true;
        path.push_back(best_j);
        basis.col(static_cast<Eigen::Index>(step)) = best_dir;
        residual -= best_dir * best_dir.dot(residual);
        path_rss.push_back(residual.squaredNorm());
    }

    std::size_t best_k = 0;
    double best_sc = path_rss[0];
    for (std::size_t k = 1; k < path_rss.size(); ++k) {
        const double sc = path_rss[k] + pe[k];
        if (sc < best_sc) {
            best_sc = sc;
            best_k = k;
        }
    }

    std::vector<std::size_t> subset(path.begin(), path.begin() + static_cast<long>(best_k));
    std::sort(subset.begin(), subset.end());

    RegressionEstimate est;
    est.score.subset = subset;
    est.score.rss = rss(X, y, subset);
    est.score.penalty_value = pe[best_k];
    est.score.sc = est.score.rss + est.score.penalty_value;
    est.beta_hat = ols_on_subset(X, y, subset);
    est.heuristic = true;
    return est;
}

}  // namespace

RegressionEstimate solve_regression_penalized(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                              const LogFactorialPenalty& penalty,
                                              const SearchMethod& method) {
    if (X.rows() != y.size())
        throw std::invalid_argument("solve_regression_penalized: X and y row counts differ");
    if (penalty.p_ambient != static_cast<std::size_t>(X.cols()))
        throw std::invalid_argument("solve_regression_penalized: penalty.p_ambient must equal p");
    if (penalty.p_tilde > static_cast<std::size_t>(X.rows()))
        throw std::invalid_argument(
            "solve_regression_penalized: p_tilde beyond row count makes every maximal model singular");

    if (method.kind == SearchKind::exhaustive) return solve_exhaustive(X, y, penalty, method);
    return solve_greedy(X, y, penalty);
}

SparseVector worst_case_beta(std::size_t p, std::size_t s, double c, std::optional<std::size_t> n,
                             Rng& rng) {
    if (p == 0) throw std::invalid_argument("worst_case_beta: p must be positive");
    if (s == 0 || s > p) throw std::invalid_argument("worst_case_beta: s must satisfy 1 <= s <= p");
    if (!(c > 0.0)) throw std::invalid_argument("worst_case_beta: c must be positive");
    if (s == p)
        throw std::invalid_argument("worst_case_beta: s == p makes log(p/s) = 0, magnitude degenerates");
    if (n && *n == 0) throw std::invalid_argument("worst_case_beta: n must be positive");

    double magnitude_sq = c * std::log(static_cast<double>(p) / static_cast<double>(s));
    if (n) magnitude_sq /= static_cast<double>(*n);
    const double magnitude = std::sqrt(magnitude_sq);

    // Partial Fisher-Yates gives a uniform s-subset.
    std::vector<std::size_t> pool(p);
    for (std::size_t i = 0; i < p; ++i) pool[i] = i;
    for (std::size_t i = 0; i < s; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(p - i));
        std::swap(pool[i], pool[j]);
    }
    SparseVector beta = SparseVector::zeros(p);
    for (std::size_t i = 0; i < s; ++i) beta[pool[i]] = magnitude;
    return beta;
}

}  // namespace sparsefdr
