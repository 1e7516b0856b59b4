#pragma once

#include <string>
#include <vector>

#include "sparsefdr/montecarlo.hpp"

namespace sparsefdr {

/// Deterministic compact formatting shared by every CSV writer.
std::string fmt_double(double v);

/// CSV field, quoted when it contains commas or quotes.
std::string csv_field(const std::string& raw);

/// Per-replicate table:
/// replicate,model,n,p,s,gamma,estimator,fp,tp,fn,fdp,l2_sq,runtime_ms
std::string results_csv(const std::vector<ExperimentSummary>& summaries);

/// Per-experiment table:
/// n,p,s,estimator,mean_fp,se_fp,fdr,se_fdr,mean_l2_sq,freq_fp_zero,
/// freq_exact_recovery,dropped_zero_fdr_points
std::string summary_csv(const std::vector<ExperimentSummary>& summaries);

/// slope,intercept,r_squared,points_used
std::string fit_csv(const SweepResult& sweep);

void write_text_file(const std::string& path, const std::string& content);

/// Key = value experiment description; keys mirror ExperimentConfig field
/// names, plus n_values for sweeps and method/guard_limit for regression.
struct FileConfig {
    ExperimentConfig base;
    std::vector<std::size_t> n_values;
};

FileConfig load_config_file(const std::string& path);

/// Plain numeric CSV (no header): one row per line, comma separated.
/// Throws InputError with a file:line prefix on malformed content.
std::vector<std::vector<double>> read_numeric_csv(const std::string& path);

}  // namespace sparsefdr
