#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sparsefdr/diagnostics.hpp"
#include "sparsefdr/means.hpp"
#include "sparsefdr/monotone.hpp"
#include "sparsefdr/regression.hpp"
#include "sparsefdr/sparse_vector.hpp"

namespace sparsefdr {

enum class ModelKind { means, regression };

/// How the true sparsity s is derived from the ambient dimension p.
struct SparsityRule {
    enum class Kind { fixed, sqrt_n, poly, linear };
    Kind kind = Kind::sqrt_n;
    double value = 0.0;  // s for fixed, alpha for poly, delta for linear

    /// Resolved s; throws ConfigError when the result leaves [1, 0.9p].
    std::size_t resolve(std::size_t p) const;
    std::string to_string() const;
    static SparsityRule parse(const std::string& text);
};

/// Estimator name plus numeric parameters, e.g. log-factorial(gamma=2.1).
struct EstimatorSpec {
    std::string name;
    std::map<std::string, double> params;

    std::string to_string() const;
    static EstimatorSpec parse(const std::string& text);
    bool has(const std::string& key) const { return params.count(key) > 0; }
    double get(const std::string& key) const;
    double get_or(const std::string& key, double fallback) const;
};

/// A fully seeded Monte Carlo experiment description.
struct ExperimentConfig {
    ModelKind model = ModelKind::means;
    std::size_t n = 0;
    std::size_t p = 0;  // equals n under the means model
    SparsityRule sparsity_rule;
    double signal_c = 2.0;
    EstimatorSpec estimator;
    std::size_t replicates = 0;
    std::uint64_t master_seed = 0;
    SearchMethod method;      // regression subset search
    std::size_t threads = 1;  // replicate-level parallelism; results do not depend on it

    /// Throws ConfigError naming the offending field. Estimator resolution
    /// is skipped when the caller supplies the estimator directly.
    void validate(bool resolve_estimator = true) const;
};

struct ReplicateRow {
    std::size_t replicate = 0;
    SelectionDiagnostics diag;
    double runtime_ms = 0.0;
};

struct ExperimentSummary {
    ExperimentConfig config;
    std::size_t s = 0;
    double mean_fp = 0.0, se_fp = 0.0;
    double mean_fdp = 0.0, se_fdp = 0.0;  // mean_fdp is the FDR estimate
    double mean_l2_sq = 0.0, se_l2_sq = 0.0;
    double freq_fp_zero = 0.0;
    double freq_exact_recovery = 0.0;
    double mean_symdiff_ratio = 0.0;
    std::vector<ReplicateRow> rows;
};

/// Estimator applied to a realized means instance. Built-in estimators
/// only look at instance.y (plus the true sparsity for the calibrated
/// ones); instrumented test estimators may inspect the truth.
using InstanceEstimator = std::function<MeansEstimate(const MeansInstance&)>;

/// Replacement truth generator; the default is the least-favorable spike
/// vector from worst_case_beta.
using TruthGenerator = std::function<SparseVector(std::size_t p, Rng& rng)>;

/// Optional replacements for the two generation steps of a replicate.
struct ExperimentHooks {
    InstanceEstimator estimator;  // means model only; empty resolves config.estimator
    TruthGenerator truth;         // empty draws the worst-case spikes
};

/// Resolves a named estimator in experiment context, where n and the true
/// sparsity are known. Unknown names or missing parameters raise ConfigError.
InstanceEstimator resolve_means_estimator(const EstimatorSpec& spec, std::size_t n,
                                          std::size_t s_true);

/// Resolution without an instance context (audit and file estimation):
/// every parameter that would default to the true sparsity must be given
/// explicitly, except p_tilde which still defaults to n.
MeansEstimatorFn resolve_plain_estimator(const EstimatorSpec& spec, std::size_t n);

/// Runs config.replicates seeded replicates: instance from
/// seeded_substream(master_seed, r), estimator, diagnose. Aggregation is a
/// deterministic function of the rows alone, so any thread count gives an
/// identical summary.
ExperimentSummary run_experiment(const ExperimentConfig& config);
ExperimentSummary run_experiment(const ExperimentConfig& config, const ExperimentHooks& hooks);

struct SweepResult {
    std::vector<ExperimentSummary> summaries;
    LineFit fit;
    std::size_t points_used = 0;
    std::size_t dropped_zero_fdr = 0;
};

/// Runs the base experiment at each n (p tracks n under the means model)
/// and fits log(FDR) against log(s/p), dropping zero-FDR points with a
/// recorded count. Fewer than three surviving points raises
/// FitDegenerateError carrying the raw (n, s, fdr) table.
SweepResult run_sweep(const ExperimentConfig& base, const std::vector<std::size_t>& n_values);
SweepResult run_sweep(const ExperimentConfig& base, const std::vector<std::size_t>& n_values,
                      const ExperimentHooks& hooks);

}  // namespace sparsefdr
