// tsme: impute and forecast a univariate series through its Page matrix.
//
// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 numerical failure.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tsme/config.hpp"
#include "tsme/errors.hpp"
#include "tsme/experiment.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

struct Overrides {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output;
    std::optional<std::string> rows;
    std::optional<std::string> mu;
    std::optional<double> p;
};

void add_common_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config, "Experiment config file (key = value)")->required();
    cmd->add_option("--seed", o.seed, "Run with this single seed instead of the config's seed list");
    cmd->add_option("--output", o.output, "Output CSV path");
    cmd->add_option("--L", o.rows, "Page matrix rows: integer or 'auto'");
    cmd->add_option("--mu", o.mu, "Singular value threshold multiplier: real or 'cv'");
    cmd->add_option("--p", o.p, "Observation probability in (0, 1]");
}

tsme::ExperimentConfig load_config(const Overrides& o) {
    tsme::KeyValueConfig kv = tsme::KeyValueConfig::load(o.config);
    if (o.seed) kv.set("seeds", std::to_string(*o.seed));
    if (o.output) kv.set("output", *o.output);
    if (o.rows) kv.set("L", *o.rows);
    if (o.mu) kv.set("mu", *o.mu);
    if (o.p) kv.set("p", tsme::format_real(*o.p));
    return tsme::experiment_from_config(kv, std::filesystem::path(o.config).parent_path());
}

void print_reports(const std::vector<tsme::ReportRow>& rows) {
    for (const auto& row : rows) {
        std::printf("%-8s %-16s %-16s n=%-7zu rmse=%.6g", row.seed.c_str(), row.method.c_str(),
                    tsme::to_string(row.report.subset).c_str(), row.report.n_points, row.report.rmse);
        if (row.report.r2) std::printf(" r2=%.6g", *row.report.r2);
        std::printf("\n");
    }
}

void print_hyper(const tsme::Hyperparams& hp) {
    std::printf("L=%zu mu=%g%s\n", hp.rows, hp.mu, hp.cv ? " (cross-validated)" : "");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Page-matrix time series imputation and forecasting"};
    app.require_subcommand(1);

    Overrides o;
    auto* generate = app.add_subcommand("generate", "Write synthetic t,mean,observed data");
    auto* impute = app.add_subcommand("impute", "Impute and de-noise a series");
    auto* forecast = app.add_subcommand("forecast", "Train on the first 70%, forecast the remaining 30%");
    auto* cv = app.add_subcommand("cv", "Cross-validate mu and L; write the score table");
    auto* eval = app.add_subcommand("eval", "Run the configured task for every seed and report medians");
    for (auto* cmd : {generate, impute, forecast, cv, eval}) add_common_flags(cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        const tsme::ExperimentConfig cfg = load_config(o);
        if (generate->parsed()) {
            tsme::cmd_generate(cfg);
            std::printf("wrote %s\n", cfg.output.string().c_str());
        } else if (impute->parsed()) {
            const auto outcome = tsme::cmd_impute(cfg);
            print_hyper(outcome.hyper);
            std::printf("covered 1..%zu of %zu, rank %zu, p_hat %.6g\n", outcome.result.covered_last,
                        outcome.result.f_hat.size(), outcome.result.rank_retained, outcome.result.p_hat);
            print_reports(outcome.reports);
        } else if (forecast->parsed()) {
            const auto outcome = tsme::cmd_forecast(cfg);
            print_hyper(outcome.hyper);
            std::printf("forecast t=%zu..%zu\n", outcome.t_from, outcome.t_from + outcome.forecast.size() - 1);
            print_reports(outcome.reports);
        } else if (cv->parsed()) {
            const auto result = tsme::cmd_cv(cfg);
            std::printf("chosen L=%zu mu=%g score=%.6g\n", result.rows, result.mu, result.score);
        } else if (eval->parsed()) {
            print_reports(tsme::cmd_eval(cfg));
        }
    } catch (const tsme::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsage;
    } catch (const tsme::InvalidArgument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kUsage;
    } catch (const tsme::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const tsme::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
    return kOk;
}
