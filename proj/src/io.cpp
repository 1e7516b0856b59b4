#include "sparsefdr/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sparsefdr/errors.hpp"

namespace sparsefdr {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
    std::string quoted = "\"";
    for (char c : raw) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

namespace {

std::string model_name(ModelKind model) {
    return model == ModelKind::means ? "means" : "regression";
}

std::string gamma_field(const EstimatorSpec& spec) {
    return spec.has("gamma") ? fmt_double(spec.params.at("gamma")) : "";
}

}  // namespace

std::string results_csv(const std::vector<ExperimentSummary>& summaries) {
    std::ostringstream out;
    out << "replicate,model,n,p,s,gamma,estimator,fp,tp,fn,fdp,l2_sq,runtime_ms\n";
    for (const ExperimentSummary& summary : summaries) {
        const std::string prefix = model_name(summary.config.model) + "," +
                                   std::to_string(summary.config.n) + "," +
                                   std::to_string(summary.config.p) + "," +
                                   std::to_string(summary.s) + "," +
                                   gamma_field(summary.config.estimator) + "," +
                                   csv_field(summary.config.estimator.to_string());
        for (const ReplicateRow& row : summary.rows) {
            char runtime[32];
            std::snprintf(runtime, sizeof(runtime), "%.3f", row.runtime_ms);
            out << row.replicate << "," << prefix << "," << row.diag.fp << "," << row.diag.tp
                << "," << row.diag.fn_count << "," << fmt_double(row.diag.fdp) << ","
                << fmt_double(row.diag.l2_sq) << "," << runtime << "\n";
        }
    }
    return out.str();
}

std::string summary_csv(const std::vector<ExperimentSummary>& summaries) {
    std::ostringstream out;
    out << "n,p,s,estimator,mean_fp,se_fp,fdr,se_fdr,mean_l2_sq,freq_fp_zero,"
           "freq_exact_recovery,dropped_zero_fdr_points\n";
    for (const ExperimentSummary& summary : summaries) {
        out << summary.config.n << "," << summary.config.p << "," << summary.s << ","
            << csv_field(summary.config.estimator.to_string()) << ","
            << fmt_double(summary.mean_fp) << "," << fmt_double(summary.se_fp) << ","
            << fmt_double(summary.mean_fdp) << "," << fmt_double(summary.se_fdp) << ","
            << fmt_double(summary.mean_l2_sq) << "," << fmt_double(summary.freq_fp_zero) << ","
            << fmt_double(summary.freq_exact_recovery) << ","
            << (summary.mean_fdp > 0.0 ? 0 : 1) << "\n";
    }
    return out.str();
}

std::string fit_csv(const SweepResult& sweep) {
    std::ostringstream out;
    out << "slope,intercept,r_squared,points_used\n";
    out << fmt_double(sweep.fit.slope) << "," << fmt_double(sweep.fit.intercept) << ","
        << fmt_double(sweep.fit.r_squared) << "," << sweep.points_used << "\n";
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open for writing: " + path);
    out << content;
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::size_t parse_count(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size() || v < 0) throw std::invalid_argument("bad");
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw ConfigError("config: " + key + ": expected a nonnegative integer, got '" + value + "'");
    }
}

double parse_real(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("bad");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: " + key + ": expected a number, got '" + value + "'");
    }
}

}  // namespace

FileConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");

    FileConfig file;
    ExperimentConfig& cfg = file.base;
    bool saw_model = false, saw_n = false, saw_p = false, saw_rule = false, saw_estimator = false,
         saw_replicates = false, saw_seed = false;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: " + path + ":" + std::to_string(line_no) +
                              ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "model") {
            if (value == "means")
                cfg.model = ModelKind::means;
            else if (value == "regression")
                cfg.model = ModelKind::regression;
            else
                throw ConfigError("config: model: must be means or regression, got '" + value + "'");
            saw_model = true;
        } else if (key == "n") {
            cfg.n = parse_count(value, "n");
            saw_n = true;
        } else if (key == "p") {
            cfg.p = parse_count(value, "p");
            saw_p = true;
        } else if (key == "sparsity_rule") {
            cfg.sparsity_rule = SparsityRule::parse(value);
            saw_rule = true;
        } else if (key == "signal_c") {
            cfg.signal_c = parse_real(value, "signal_c");
        } else if (key == "estimator") {
            cfg.estimator = EstimatorSpec::parse(value);
            saw_estimator = true;
        } else if (key == "replicates") {
            cfg.replicates = parse_count(value, "replicates");
            saw_replicates = true;
        } else if (key == "master_seed") {
            try {
                std::size_t used = 0;
                cfg.master_seed = std::stoull(value, &used);
                if (used != value.size()) throw std::invalid_argument("bad");
            } catch (const std::exception&) {
                throw ConfigError("config: master_seed: expected a 64-bit unsigned integer");
            }
            saw_seed = true;
        } else if (key == "n_values") {
            std::string list = value;
            for (char& c : list)
                if (c == ',') c = ' ';
            std::istringstream items(list);
            std::string item;
            while (items >> item) file.n_values.push_back(parse_count(item, "n_values"));
        } else if (key == "method") {
            if (value == "exhaustive")
                cfg.method.kind = SearchKind::exhaustive;
            else if (value == "greedy" || value == "greedy_forward")
                cfg.method.kind = SearchKind::greedy_forward;
            else
                throw ConfigError("config: method: must be exhaustive or greedy, got '" + value + "'");
        } else if (key == "guard_limit") {
            cfg.method.guard_limit = parse_count(value, "guard_limit");
        } else {
            throw ConfigError("config: unknown key '" + key + "' at " + path + ":" +
                              std::to_string(line_no));
        }
    }

    if (!saw_model) throw ConfigError("config: missing 'model'");
    if (!saw_rule) throw ConfigError("config: missing 'sparsity_rule'");
    if (!saw_estimator) throw ConfigError("config: missing 'estimator'");
    if (!saw_replicates) throw ConfigError("config: missing 'replicates'");
    if (!saw_seed) throw ConfigError("config: missing 'master_seed'");
    if (!saw_n && file.n_values.empty())
        throw ConfigError("config: missing 'n' (or 'n_values' for sweeps)");
    if (!saw_n) cfg.n = file.n_values.front();
    if (!saw_p) cfg.p = (cfg.model == ModelKind::means) ? cfg.n : 0;
    if (cfg.model == ModelKind::regression && cfg.p == 0)
        throw ConfigError("config: missing 'p' for the regression model");
    return file;
}

std::vector<std::vector<double>> read_numeric_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);

    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        std::vector<double> row;
        std::istringstream fields(stripped);
        std::string field;
        while (std::getline(fields, field, ',')) {
            field = trim(field);
            try {
                std::size_t used = 0;
                row.push_back(std::stod(field, &used));
                if (used != field.size()) throw std::invalid_argument("bad");
            } catch (const std::exception&) {
                throw InputError(path + ":" + std::to_string(line_no) +
                                 ": expected a number, got '" + field + "'");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw InputError(path + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(rows.front().size()) + " columns, got " +
                             std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InputError(path + ": no numeric rows found");
    return rows;
}

}  // namespace sparsefdr
