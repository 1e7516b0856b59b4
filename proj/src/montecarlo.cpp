#include "sparsefdr/montecarlo.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sparsefdr/errors.hpp"

namespace sparsefdr {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: " + what + ": not a number: '" + text + "'");
    }
}

std::string canonical_name(std::string name) {
    for (char& c : name)
        if (c == '_') c = '-';
    return name;
}

}  // namespace

std::size_t SparsityRule::resolve(std::size_t p) const {
    if (p == 0) throw ConfigError("config: sparsity_rule: p must be positive");
    double s = 0.0;
    switch (kind) {
        case Kind::fixed:
            s = value;
            break;
        case Kind::sqrt_n:
            s = std::floor(std::sqrt(static_cast<double>(p)));
            break;
        case Kind::poly:
            if (!(value > 0.0 && value < 1.0))
                throw ConfigError("config: sparsity_rule: poly alpha must lie in (0,1)");
            s = std::floor(std::pow(static_cast<double>(p), value));
            break;
        case Kind::linear:
            if (!(value > 0.0 && value <= 0.9))
                throw ConfigError("config: sparsity_rule: linear delta must lie in (0, 0.9]");
            s = std::floor(value * static_cast<double>(p));
            break;
    }
    if (!(s >= 1.0) || s > 0.9 * static_cast<double>(p)) {
        std::ostringstream msg;
        msg << "config: sparsity_rule: resolves to s=" << s << " outside [1, 0.9*p] at p=" << p;
        throw ConfigError(msg.str());
    }
    return static_cast<std::size_t>(s);
}

std::string SparsityRule::to_string() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::fixed:
            out << "fixed(" << static_cast<std::size_t>(value) << ")";
            break;
        case Kind::sqrt_n:
            out << "sqrt_n";
            break;
        case Kind::poly:
            out << "poly(" << value << ")";
            break;
        case Kind::linear:
            out << "linear(" << value << ")";
            break;
    }
    return out.str();
}

SparsityRule SparsityRule::parse(const std::string& text) {
    const std::string t = trim(text);
    SparsityRule rule;
    if (t == "sqrt_n" || t == "sqrt-n") {
        rule.kind = Kind::sqrt_n;
        return rule;
    }
    const auto open = t.find('(');
    if (open == std::string::npos || t.back() != ')')
        throw ConfigError("config: sparsity_rule: expected sqrt_n, fixed(s), poly(alpha) or linear(delta), got '" + t + "'");
    const std::string head = trim(t.substr(0, open));
    const std::string arg = trim(t.substr(open + 1, t.size() - open - 2));
    rule.value = parse_number(arg, "sparsity_rule argument");
    if (head == "fixed") {
        if (rule.value < 1.0 || rule.value != std::floor(rule.value))
            throw ConfigError("config: sparsity_rule: fixed(s) needs a positive integer s");
        rule.kind = Kind::fixed;
    } else if (head == "poly") {
        rule.kind = Kind::poly;
    } else if (head == "linear") {
        rule.kind = Kind::linear;
    } else {
        throw ConfigError("config: sparsity_rule: unknown rule '" + head + "'");
    }
    return rule;
}

std::string EstimatorSpec::to_string() const {
    std::ostringstream out;
    out << name;
    if (!params.empty()) {
        out << "(";
        bool first = true;
        for (const auto& [key, val] : params) {
            if (!first) out << ",";
            first = false;
            out << key << "=" << val;
        }
        out << ")";
    }
    return out.str();
}

EstimatorSpec EstimatorSpec::parse(const std::string& text) {
    const std::string t = trim(text);
    EstimatorSpec spec;
    const auto open = t.find('(');
    if (open == std::string::npos) {
        spec.name = canonical_name(trim(t));
        return spec;
    }
    if (t.back() != ')') throw ConfigError("config: estimator: missing ')' in '" + t + "'");
    spec.name = canonical_name(trim(t.substr(0, open)));
    std::string body = t.substr(open + 1, t.size() - open - 2);
    std::istringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: estimator: expected key=value, got '" + item + "'");
        std::string key = trim(item.substr(0, eq));
        for (char& c : key)
            if (c == '-') c = '_';
        spec.params[key] = parse_number(trim(item.substr(eq + 1)), "estimator." + key);
    }
    if (spec.name.empty()) throw ConfigError("config: estimator: empty name");
    return spec;
}

double EstimatorSpec::get(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end())
        throw ConfigError("config: estimator." + key + ": required by " + name);
    return it->second;
}

double EstimatorSpec::get_or(const std::string& key, double fallback) const {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

namespace {

std::size_t param_as_count(const EstimatorSpec& spec, const std::string& key, double v) {
    if (!(v >= 1.0) || v != std::floor(v))
        throw ConfigError("config: estimator." + key + ": must be a positive integer (" +
                          spec.name + ")");
    return static_cast<std::size_t>(v);
}

void check_known_params(const EstimatorSpec& spec, std::initializer_list<const char*> known) {
    for (const auto& [key, _] : spec.params) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok) throw ConfigError("config: estimator." + key + ": unknown parameter for " + spec.name);
    }
}

}  // namespace

InstanceEstimator resolve_means_estimator(const EstimatorSpec& spec, std::size_t n,
                                          std::size_t s_true) {
    const std::string& name = spec.name;
    if (name == "hard-threshold") {
        check_known_params(spec, {"gamma", "s"});
        const double gamma = spec.get("gamma");
        const std::size_t s =
            spec.has("s") ? param_as_count(spec, "s", spec.get("s")) : s_true;
        return [gamma, s](const MeansInstance& inst) {
            return hard_threshold(inst.y, gamma, s);
        };
    }
    if (name == "fixed-threshold") {
        check_known_params(spec, {"t"});
        const std::size_t s = s_true;
        const double t = spec.has("t")
                             ? spec.get("t")
                             : std::sqrt(2.0 * std::log(static_cast<double>(n - s)));
        return [t](const MeansInstance& inst) { return fixed_threshold(inst.y, t); };
    }
    if (name == "log-factorial") {
        check_known_params(spec, {"gamma", "p_tilde"});
        const double gamma = spec.get("gamma");
        const std::size_t p_tilde =
            spec.has("p_tilde") ? param_as_count(spec, "p_tilde", spec.get("p_tilde")) : n;
        const LogFactorialPenalty penalty(gamma, n, p_tilde);
        return [penalty](const MeansInstance& inst) {
            return solve_means_log_factorial(inst.y, penalty);
        };
    }
    if (name == "bh-stepup") {
        check_known_params(spec, {"q"});
        const double q = spec.get("q");
        return [q](const MeansInstance& inst) { return bh_stepup(inst.y, q); };
    }
    if (name == "counterexample") {
        check_known_params(spec, {"gamma"});
        const double gamma = spec.get("gamma");
        return [gamma](const MeansInstance& inst) {
            return counterexample_estimate(inst.y, gamma);
        };
    }
    if (name == "top-s") {
        check_known_params(spec, {"s"});
        const std::size_t s =
            spec.has("s") ? param_as_count(spec, "s", spec.get("s")) : s_true;
        return [s](const MeansInstance& inst) { return top_s_oracle(inst.y, s); };
    }
    throw ConfigError("config: estimator: unknown estimator '" + name + "'");
}

MeansEstimatorFn resolve_plain_estimator(const EstimatorSpec& spec, std::size_t n) {
    // Estimators that would otherwise borrow the true sparsity must be
    // fully parameterized here.
    if ((spec.name == "hard-threshold" || spec.name == "top-s") && !spec.has("s"))
        throw ConfigError("config: estimator.s: required by " + spec.name +
                          " outside experiment context");
    if (spec.name == "fixed-threshold" && !spec.has("t"))
        throw ConfigError("config: estimator.t: required by fixed-threshold outside experiment context");
    const InstanceEstimator est = resolve_means_estimator(spec, n, 1);
    return [est, n](const SparseVector& y) {
        MeansInstance inst;
        inst.n = n;
        inst.y = y;
        inst.truth = SparseVector::zeros(n);
        return est(inst);
    };
}

void ExperimentConfig::validate(bool resolve_estimator) const {
    if (n < 1) throw ConfigError("config: n: must be >= 1");
    if (p < 1) throw ConfigError("config: p: must be >= 1");
    if (model == ModelKind::means && p != n)
        throw ConfigError("config: p: must equal n under the means model");
    if (replicates < 1) throw ConfigError("config: replicates: must be >= 1");
    if (!(signal_c > 0.0)) throw ConfigError("config: signal_c: must be positive");
    if (threads < 1) throw ConfigError("config: threads: must be >= 1");
    const std::size_t s = sparsity_rule.resolve(p);

    if (!resolve_estimator) return;
    if (model == ModelKind::regression) {
        if (estimator.name != "log-factorial")
            throw ConfigError("config: estimator: regression experiments support log-factorial only");
        const double gamma = estimator.get("gamma");
        if (!(gamma > 0.0)) throw ConfigError("config: estimator.gamma: must be positive");
        const std::size_t cap = std::min(n, p);
        const std::size_t p_tilde =
            estimator.has("p_tilde")
                ? param_as_count(estimator, "p_tilde", estimator.get("p_tilde"))
                : cap;
        if (p_tilde > cap)
            throw ConfigError("config: estimator.p_tilde: must not exceed min(n, p)");
    } else {
        resolve_means_estimator(estimator, n, s);  // surfaces estimator errors early
    }
}

namespace {

struct Accumulator {
    double sum = 0.0, sum_sq = 0.0;
    std::size_t count = 0;
    void add(double v) {
        sum += v;
        sum_sq += v * v;
        ++count;
    }
    double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
    double se() const {
        if (count < 2) return 0.0;
        const double m = mean();
        const double var =
            (sum_sq - static_cast<double>(count) * m * m) / static_cast<double>(count - 1);
        return std::sqrt(std::max(0.0, var) / static_cast<double>(count));
    }
};

ReplicateRow run_means_replicate(const ExperimentConfig& config, std::size_t s, std::size_t r,
                                 const InstanceEstimator& estimator,
                                 const TruthGenerator& truth_gen) {
    const auto started = std::chrono::steady_clock::now();
    Rng rng = seeded_substream(config.master_seed, r);

    MeansInstance inst;
    inst.n = config.n;
    inst.seed = config.master_seed;
    inst.truth = truth_gen ? truth_gen(config.p, rng)
                           : worst_case_beta(config.p, s, config.signal_c, std::nullopt, rng);
    if (inst.truth.size() != config.n)
        throw ConfigError("config: truth generator returned wrong length");
    inst.y = inst.truth;
    for (std::size_t i = 0; i < config.n; ++i) inst.y[i] += rng.normal();

    const MeansEstimate est = estimator(inst);

    ReplicateRow row;
    row.replicate = r;
    row.diag = diagnose(est.beta_hat, inst.truth);
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                               started)
                         .count();
    return row;
}

ReplicateRow run_regression_replicate(const ExperimentConfig& config, std::size_t s, std::size_t r,
                                      const TruthGenerator& truth_gen) {
    const auto started = std::chrono::steady_clock::now();
    Rng rng = seeded_substream(config.master_seed, r);

    RegressionInstance inst;
    inst.n = config.n;
    inst.p = config.p;
    inst.seed = config.master_seed;
    inst.truth = truth_gen ? truth_gen(config.p, rng)
                           : worst_case_beta(config.p, s, config.signal_c, config.n, rng);
    if (inst.truth.size() != config.p)
        throw ConfigError("config: truth generator returned wrong length");
    inst.X = gaussian_design(config.n, config.p, rng);
    Eigen::VectorXd beta(static_cast<Eigen::Index>(config.p));
    for (std::size_t j = 0; j < config.p; ++j) beta(static_cast<Eigen::Index>(j)) = inst.truth[j];
    inst.y = inst.X * beta;
    for (Eigen::Index i = 0; i < inst.y.size(); ++i) inst.y(i) += rng.normal();

    const double gamma = config.estimator.get("gamma");
    const std::size_t cap = std::min(config.n, config.p);
    const std::size_t p_tilde =
        config.estimator.has("p_tilde")
            ? static_cast<std::size_t>(config.estimator.get("p_tilde"))
            : cap;
    const LogFactorialPenalty penalty(gamma, config.p, p_tilde);
    const RegressionEstimate est = solve_regression_penalized(inst.X, inst.y, penalty, config.method);

    ReplicateRow row;
    row.replicate = r;
    row.diag = diagnose(est.beta_hat, inst.truth);
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                               started)
                         .count();
    return row;
}

ExperimentSummary summarize(const ExperimentConfig& config, std::size_t s,
                            std::vector<ReplicateRow> rows) {
    ExperimentSummary summary;
    summary.config = config;
    summary.s = s;
    Accumulator fp, fdp, l2, symdiff;
    std::size_t fp_zero = 0, exact = 0;
    for (const ReplicateRow& row : rows) {
        fp.add(static_cast<double>(row.diag.fp));
        fdp.add(row.diag.fdp);
        l2.add(row.diag.l2_sq);
        symdiff.add(row.diag.symdiff_ratio);
        if (row.diag.fp == 0) ++fp_zero;
        if (row.diag.fp == 0 && row.diag.fn_count == 0) ++exact;
    }
    const double total = static_cast<double>(rows.size());
    summary.mean_fp = fp.mean();
    summary.se_fp = fp.se();
    summary.mean_fdp = fdp.mean();
    summary.se_fdp = fdp.se();
    summary.mean_l2_sq = l2.mean();
    summary.se_l2_sq = l2.se();
    summary.freq_fp_zero = static_cast<double>(fp_zero) / total;
    summary.freq_exact_recovery = static_cast<double>(exact) / total;
    summary.mean_symdiff_ratio = symdiff.mean();
    summary.rows = std::move(rows);
    return summary;
}

ExperimentSummary run_rows(const ExperimentConfig& config, std::size_t s,
                           const std::function<ReplicateRow(std::size_t)>& one) {
    std::vector<ReplicateRow> rows(config.replicates);
    const std::size_t workers = std::min(config.threads, config.replicates);
    if (workers <= 1) {
        for (std::size_t r = 0; r < config.replicates; ++r) rows[r] = one(r);
    } else {
        std::atomic<std::size_t> next{0};
        std::mutex error_mutex;
        std::exception_ptr first_error;
        auto work = [&] {
            for (;;) {
                const std::size_t r = next.fetch_add(1);
                if (r >= config.replicates) return;
                try {
                    rows[r] = one(r);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    next.store(config.replicates);
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }
    return summarize(config, s, std::move(rows));
}

ReplicateRow wrap_replicate_errors(std::size_t r, const std::function<ReplicateRow()>& body) {
    try {
        return body();
    } catch (const BudgetError& e) {
        throw BudgetError(std::string(e.what()) + " [replicate " + std::to_string(r) + "]",
                          e.required_budget);
    }
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& config) {
    return run_experiment(config, ExperimentHooks{});
}

ExperimentSummary run_experiment(const ExperimentConfig& config, const ExperimentHooks& hooks) {
    if (hooks.estimator && config.model != ModelKind::means)
        throw ConfigError("config: estimator override is only supported for the means model");
    config.validate(!hooks.estimator);
    const std::size_t s = config.sparsity_rule.resolve(config.p);
    if (config.model == ModelKind::regression) {
        return run_rows(config, s, [&](std::size_t r) {
            return wrap_replicate_errors(
                r, [&] { return run_regression_replicate(config, s, r, hooks.truth); });
        });
    }
    const InstanceEstimator estimator =
        hooks.estimator ? hooks.estimator : resolve_means_estimator(config.estimator, config.n, s);
    return run_rows(config, s, [&](std::size_t r) {
        return run_means_replicate(config, s, r, estimator, hooks.truth);
    });
}

namespace {

SweepResult sweep_impl(const ExperimentConfig& base, const std::vector<std::size_t>& n_values,
                       const ExperimentHooks& hooks) {
    if (n_values.size() < 3) throw ConfigError("config: n_values: need at least 3 values");
    SweepResult result;
    for (const std::size_t n : n_values) {
        ExperimentConfig cfg = base;
        cfg.n = n;
        if (base.model == ModelKind::means) cfg.p = n;
        result.summaries.push_back(run_experiment(cfg, hooks));
    }

    std::vector<std::pair<double, double>> points;
    std::ostringstream table;
    table << "n,s,fdr\n";
    for (const ExperimentSummary& summary : result.summaries) {
        const double ratio =
            static_cast<double>(summary.s) / static_cast<double>(summary.config.p);
        table << summary.config.n << "," << summary.s << "," << summary.mean_fdp << "\n";
        if (summary.mean_fdp > 0.0) {
            points.emplace_back(ratio, summary.mean_fdp);
        } else {
            ++result.dropped_zero_fdr;
        }
    }
    result.points_used = points.size();
    if (points.size() < 3)
        throw FitDegenerateError(
            "run_sweep: fewer than 3 nonzero-FDR points survive for the log-log fit",
            table.str());
    result.fit = fdr_rate_exponent(points);
    return result;
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& base, const std::vector<std::size_t>& n_values) {
    return sweep_impl(base, n_values, ExperimentHooks{});
}

SweepResult run_sweep(const ExperimentConfig& base, const std::vector<std::size_t>& n_values,
                      const ExperimentHooks& hooks) {
    return sweep_impl(base, n_values, hooks);
}

}  // namespace sparsefdr
