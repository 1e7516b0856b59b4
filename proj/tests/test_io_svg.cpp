#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "sparsefdr/errors.hpp"
#include "sparsefdr/io.hpp"
#include "sparsefdr/svg.hpp"

using namespace sparsefdr;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("sparsefdr_test_" + name);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace

TEST_CASE("csv field quoting") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(fmt_double(0.25) == "0.25");
    CHECK(fmt_double(3.0) == "3");
}

TEST_CASE("csv writers emit the pinned headers") {
    ExperimentConfig cfg;
    cfg.model = ModelKind::means;
    cfg.n = cfg.p = 64;
    cfg.sparsity_rule = SparsityRule::parse("sqrt_n");
    cfg.estimator = EstimatorSpec::parse("log-factorial(gamma=2.1,p_tilde=64)");
    cfg.replicates = 3;
    cfg.master_seed = 9;
    const auto summary = run_experiment(cfg);

    const std::string results = results_csv({summary});
    CHECK(results.rfind("replicate,model,n,p,s,gamma,estimator,fp,tp,fn,fdp,l2_sq,runtime_ms\n",
                        0) == 0);
    // estimator strings with parameter lists carry commas, so they are quoted
    CHECK(results.find("\"log-factorial(gamma=2.1,p_tilde=64)\"") != std::string::npos);

    const std::string sum = summary_csv({summary});
    CHECK(sum.rfind("n,p,s,estimator,mean_fp,se_fp,fdr,se_fdr,mean_l2_sq,freq_fp_zero,"
                    "freq_exact_recovery,dropped_zero_fdr_points\n",
                    0) == 0);

    SweepResult sweep;
    sweep.fit = LineFit{1.5, -0.25, 0.99};
    sweep.points_used = 5;
    CHECK(fit_csv(sweep) == "slope,intercept,r_squared,points_used\n1.5,-0.25,0.99,5\n");
}

TEST_CASE("config files load and validate") {
    const auto path = temp_file("config.cfg");
    write_file(path,
               "# sweep description\n"
               "model = means\n"
               "sparsity_rule = sqrt_n\n"
               "signal_c = 2\n"
               "estimator = log-factorial(gamma=2.1)\n"
               "replicates = 10\n"
               "master_seed = 77\n"
               "n_values = 64, 128, 256\n");
    const auto file = load_config_file(path.string());
    CHECK(file.base.model == ModelKind::means);
    CHECK(file.base.replicates == 10);
    CHECK(file.base.master_seed == 77);
    CHECK(file.n_values == std::vector<std::size_t>{64, 128, 256});
    CHECK(file.base.n == 64);  // defaults to the first sweep size
    CHECK(file.base.p == 64);

    write_file(path,
               "model = regression\nn = 50\np = 8\nsparsity_rule = fixed(2)\n"
               "estimator = log-factorial(gamma=2)\nreplicates = 4\nmaster_seed = 3\n"
               "method = greedy\nguard_limit = 500\n");
    const auto reg = load_config_file(path.string());
    CHECK(reg.base.model == ModelKind::regression);
    CHECK(reg.base.method.kind == SearchKind::greedy_forward);
    CHECK(reg.base.method.guard_limit == 500);
    CHECK(reg.base.p == 8);
    std::filesystem::remove(path);
}

TEST_CASE("config file errors carry a field or line") {
    const auto path = temp_file("bad.cfg");
    write_file(path, "model = means\nwhatever = 3\n");
    CHECK_THROWS_WITH_AS(load_config_file(path.string()), doctest::Contains("whatever"),
                         ConfigError);
    write_file(path, "model = means\n");
    CHECK_THROWS_WITH_AS(load_config_file(path.string()), doctest::Contains("sparsity_rule"),
                         ConfigError);
    write_file(path, "model = means\nreplicates = -3\n");
    CHECK_THROWS_WITH_AS(load_config_file(path.string()), doctest::Contains("replicates"),
                         ConfigError);
    CHECK_THROWS_AS(load_config_file("/nonexistent/st.cfg"), ConfigError);
    std::filesystem::remove(path);
}

TEST_CASE("numeric csv reader reports the offending line") {
    const auto path = temp_file("data.csv");
    write_file(path, "1.0,2.0\n3.0,oops\n");
    try {
        read_numeric_csv(path.string());
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find(":2:") != std::string::npos);
        CHECK(std::string(e.what()).find("oops") != std::string::npos);
    }
    write_file(path, "1.0,2.0\n3.0\n");
    CHECK_THROWS_WITH_AS(read_numeric_csv(path.string()), doctest::Contains("columns"), InputError);
    write_file(path, "1.5\n-2.5\n0\n");
    const auto rows = read_numeric_csv(path.string());
    CHECK(rows.size() == 3);
    CHECK(rows[1][0] == -2.5);
    std::filesystem::remove(path);
}

TEST_CASE("svg chart renders every structural element") {
    PlotSeries series;
    series.x_label = "log(s/n)";
    series.y_label = "log(FDR)";
    series.points = {{-5.0, -2.0}, {-4.0, -1.6}, {-3.0, -1.3}};
    series.fitted_line = std::make_pair(0.35, -0.2);
    const std::string svg = render_line_chart(series);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("circle") != std::string::npos);
    CHECK(svg.find("log(s/n)") != std::string::npos);
    CHECK(svg.find("log(FDR)") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);  // fitted line
    CHECK(svg == render_line_chart(series));                   // deterministic

    PlotSeries empty;
    CHECK_THROWS_AS(render_line_chart(empty), std::invalid_argument);
}
