// Command-line front end: file estimation, seeded experiments and sweeps,
// and the monotonicity auditor.
//
// Exit codes: 0 success/clean, 1 property violation (or degenerate sweep
// fit), 2 input error, 3 configuration error, 4 search-budget error.
#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "sparsefdr/errors.hpp"
#include "sparsefdr/io.hpp"
#include "sparsefdr/means.hpp"
#include "sparsefdr/monotone.hpp"
#include "sparsefdr/montecarlo.hpp"
#include "sparsefdr/regression.hpp"
#include "sparsefdr/svg.hpp"

namespace fs = std::filesystem;
using namespace sparsefdr;

namespace {

struct EstimatorFlags {
    std::optional<double> gamma;
    std::optional<double> s;
    std::optional<double> q;
    std::optional<double> t;
    std::optional<double> p_tilde;

    EstimatorSpec to_spec(const std::string& name) const {
        EstimatorSpec spec;
        spec.name = name;
        if (gamma) spec.params["gamma"] = *gamma;
        if (s) spec.params["s"] = *s;
        if (q) spec.params["q"] = *q;
        if (t) spec.params["t"] = *t;
        if (p_tilde) spec.params["p_tilde"] = *p_tilde;
        return spec;
    }
};

void add_estimator_flags(CLI::App* cmd, EstimatorFlags& flags) {
    cmd->add_option("--gamma", flags.gamma, "penalty multiplier");
    cmd->add_option("--s", flags.s, "calibration sparsity");
    cmd->add_option("--q", flags.q, "FDR level for bh-stepup");
    cmd->add_option("--t", flags.t, "fixed threshold value");
    cmd->add_option("--p-tilde", flags.p_tilde, "model size search cap");
}

std::string full_precision(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void ensure_out_dir(const std::string& out) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec && !fs::is_directory(out))
        throw ConfigError("config: cannot create output directory '" + out + "'");
}

int cmd_estimate(const std::string& input, const std::string& estimator_name,
                 const EstimatorFlags& flags, const std::string& method_name,
                 std::size_t guard_limit, const std::string& out) {
    const auto rows = read_numeric_csv(input);
    ensure_out_dir(out);
    const std::string out_path = (fs::path(out) / "estimate.csv").string();

    SparseVector beta_hat;
    std::size_t selected_k = 0;
    double objective = 0.0;

    if (rows.front().size() == 1) {
        const std::size_t n = rows.size();
        SparseVector y = SparseVector::zeros(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = rows[i][0];
        const auto estimator = resolve_plain_estimator(flags.to_spec(estimator_name), n);
        const MeansEstimate est = estimator(y);
        beta_hat = est.beta_hat;
        selected_k = est.selected_k;
        objective = est.objective_value;
    } else {
        const std::size_t n = rows.size();
        const std::size_t p = rows.front().size() - 1;
        Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
        Eigen::VectorXd y(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < p; ++j)
                x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
            y(static_cast<Eigen::Index>(i)) = rows[i][p];
        }
        if (estimator_name != "log-factorial" && estimator_name != "log_factorial")
            throw ConfigError("config: estimator: regression input supports log-factorial only");
        if (!flags.gamma) throw ConfigError("config: estimator.gamma: required");
        const std::size_t cap = std::min(n, p);
        const std::size_t p_tilde =
            flags.p_tilde ? static_cast<std::size_t>(*flags.p_tilde) : cap;
        SearchMethod method;
        method.guard_limit = guard_limit;
        if (method_name == "greedy")
            method.kind = SearchKind::greedy_forward;
        else if (method_name != "exhaustive")
            throw ConfigError("config: method: must be exhaustive or greedy");
        const auto est =
            solve_regression_penalized(x, y, LogFactorialPenalty(*flags.gamma, p, p_tilde), method);
        beta_hat = est.beta_hat;
        selected_k = beta_hat.support_size();
        objective = est.score.sc;
    }

    std::string csv = "index,value,selected\n";
    for (std::size_t i = 0; i < beta_hat.size(); ++i) {
        csv += std::to_string(i) + "," + full_precision(beta_hat[i]) + "," +
               (beta_hat[i] != 0.0 ? "true" : "false") + "\n";
    }
    write_text_file(out_path, csv);
    std::cout << "selected_k=" << selected_k << " objective=" << fmt_double(objective) << "\n";
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

PlotSeries sweep_series(const SweepResult& sweep) {
    PlotSeries series;
    series.x_label = "log(s/n)";
    series.y_label = "log(FDR)";
    for (const auto& summary : sweep.summaries) {
        if (summary.mean_fdp <= 0.0) continue;
        const double ratio =
            static_cast<double>(summary.s) / static_cast<double>(summary.config.p);
        series.points.emplace_back(std::log(ratio), std::log(summary.mean_fdp));
    }
    series.fitted_line = std::make_pair(sweep.fit.slope, sweep.fit.intercept);
    return series;
}

int cmd_experiment(const std::string& config_path, std::size_t threads, const std::string& out) {
    FileConfig file = load_config_file(config_path);
    file.base.threads = threads;
    const auto summary = run_experiment(file.base);
    ensure_out_dir(out);
    write_text_file((fs::path(out) / "results.csv").string(), results_csv({summary}));
    write_text_file((fs::path(out) / "summary.csv").string(), summary_csv({summary}));
    std::cout << "n=" << summary.config.n << " s=" << summary.s
              << " mean_fp=" << fmt_double(summary.mean_fp)
              << " fdr=" << fmt_double(summary.mean_fdp)
              << " mean_l2_sq=" << fmt_double(summary.mean_l2_sq) << "\n";
    std::cout << "wrote " << (fs::path(out) / "results.csv").string() << ", "
              << (fs::path(out) / "summary.csv").string() << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, std::size_t threads, const std::string& out) {
    FileConfig file = load_config_file(config_path);
    file.base.threads = threads;
    if (file.n_values.size() < 3)
        throw ConfigError("config: n_values: sweeps need at least 3 sizes");
    ensure_out_dir(out);
    SweepResult sweep;
    try {
        sweep = run_sweep(file.base, file.n_values);
    } catch (const FitDegenerateError& e) {
        std::cerr << e.what() << "\n" << e.raw_table;
        return 1;
    }
    write_text_file((fs::path(out) / "results.csv").string(), results_csv(sweep.summaries));
    write_text_file((fs::path(out) / "summary.csv").string(), summary_csv(sweep.summaries));
    write_text_file((fs::path(out) / "fit.csv").string(), fit_csv(sweep));
    write_text_file((fs::path(out) / "sweep.svg").string(),
                    render_line_chart(sweep_series(sweep)));
    std::cout << "slope=" << fmt_double(sweep.fit.slope)
              << " intercept=" << fmt_double(sweep.fit.intercept)
              << " r_squared=" << fmt_double(sweep.fit.r_squared)
              << " points_used=" << sweep.points_used
              << " dropped_zero_fdr_points=" << sweep.dropped_zero_fdr << "\n";
    return 0;
}

std::string dump_vector(const char* label, const SparseVector& v) {
    std::string text = label;
    text += " =";
    for (std::size_t i = 0; i < v.size(); ++i) text += " " + full_precision(v[i]);
    text += "\n";
    return text;
}

int cmd_audit(const std::string& estimator_name, const EstimatorFlags& flags, std::size_t trials,
              std::size_t n, std::uint64_t seed, double inflation, bool inject_known_pair,
              const std::string& out) {
    const EstimatorSpec spec = flags.to_spec(estimator_name);
    const MeansEstimatorFn estimator = resolve_plain_estimator(spec, n);

    AuditOptions options;
    options.trials = trials;
    options.n = n;
    options.seed = seed;
    options.inflation_scale = inflation;
    if (inject_known_pair) {
        if (!flags.gamma)
            throw ConfigError("config: estimator.gamma: required to build the injected pair");
        options.injected_pairs.push_back(shrinking_selection_pair(n, *flags.gamma));
    }
    const MonotoneReport report = audit_monotonicity(estimator, options);

    std::cout << "trials=" << report.trials << " value_violations=" << report.value_violations
              << " selection_violations=" << report.selection_violations << "\n";
    if (!report.first_counterexample) {
        std::cout << "no violation found\n";
        return 0;
    }
    const auto& [y, z] = *report.first_counterexample;
    std::string dump;
    dump += dump_vector("y", y);
    dump += dump_vector("z", z);
    dump += dump_vector("beta_hat(y)", estimator(y).beta_hat);
    dump += dump_vector("beta_hat(z)", estimator(z).beta_hat);
    ensure_out_dir(out);
    const std::string dump_path = (fs::path(out) / "counterexample.txt").string();
    write_text_file(dump_path, dump);
    std::cout << "first counterexample written to " << dump_path << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse estimators with false-discovery diagnostics"};
    app.require_subcommand(1);

    std::string out = ".";
    std::size_t threads = 1;
    app.add_option("--out", out, "output directory")->capture_default_str();
    app.add_option("--threads", threads, "replicate-level worker count")->capture_default_str();

    // estimate
    auto* estimate = app.add_subcommand("estimate", "estimate coefficients from a CSV of y or X,y");
    std::string input_path, estimator_name;
    EstimatorFlags estimate_flags;
    std::string method_name = "exhaustive";
    std::size_t guard_limit = 2'000'000;
    estimate->add_option("input", input_path, "numeric CSV: one column y, or X with y last")
        ->required();
    estimate->add_option("estimator", estimator_name,
                         "hard-threshold | fixed-threshold | log-factorial | bh-stepup | "
                         "counterexample | top-s")
        ->required();
    add_estimator_flags(estimate, estimate_flags);
    estimate->add_option("--method", method_name, "exhaustive | greedy")->capture_default_str();
    estimate->add_option("--guard-limit", guard_limit, "max scored subsets")->capture_default_str();

    // experiment / sweep
    auto* experiment = app.add_subcommand("experiment", "run a seeded Monte Carlo experiment");
    std::string experiment_config;
    experiment->add_option("config", experiment_config, "experiment config file")->required();

    auto* sweep = app.add_subcommand("sweep", "run an n-sweep and fit log(FDR) vs log(s/n)");
    std::string sweep_config;
    sweep->add_option("config", sweep_config, "sweep config file (needs n_values)")->required();

    // audit
    auto* audit = app.add_subcommand("audit", "random-search monotonicity audit of an estimator");
    std::string audit_estimator;
    EstimatorFlags audit_flags;
    std::size_t trials = 10000;
    std::size_t audit_n = 50;
    std::uint64_t seed = 0;
    double inflation = 1.0;
    bool inject_known_pair = false;
    audit->add_option("estimator", audit_estimator, "estimator name")->required();
    add_estimator_flags(audit, audit_flags);
    audit->add_option("--trials", trials, "random majorizing pairs to sample")
        ->capture_default_str();
    audit->add_option("--n", audit_n, "dimension")->capture_default_str();
    audit->add_option("--seed", seed, "master seed")->capture_default_str();
    audit->add_option("--inflation", inflation, "mean multiplicative inflation")
        ->capture_default_str();
    audit->add_flag("--inject-shrinking-pair", inject_known_pair,
                    "audit the constructed shrinking-selection pair as trial 0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (estimate->parsed())
            return cmd_estimate(input_path, estimator_name, estimate_flags, method_name,
                                guard_limit, out);
        if (experiment->parsed()) return cmd_experiment(experiment_config, threads, out);
        if (sweep->parsed()) return cmd_sweep(sweep_config, threads, out);
        if (audit->parsed())
            return cmd_audit(audit_estimator, audit_flags, trials, audit_n, seed, inflation,
                             inject_known_pair, out);
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
