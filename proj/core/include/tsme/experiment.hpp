#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tsme/config.hpp"
#include "tsme/cross_validation.hpp"
#include "tsme/csv.hpp"
#include "tsme/imputer.hpp"
#include "tsme/metrics.hpp"

namespace tsme {

struct LoadedSeries {
    TimeSeries observed;
    std::optional<TimeSeries> truth;  ///< what an estimator should recover, when known
};

/// Synthetic: mean -> noise -> mask, all keyed by `seed`. File: the CSV's
/// `observed` column, additionally masked when p < 1.
LoadedSeries load_series(const ExperimentConfig& cfg, std::uint64_t seed);

struct Hyperparams {
    std::size_t rows = 0;
    double mu = 0.0;
    std::optional<CvResult> cv;
};

/// Resolves L (explicit or floor(T^(1/3))) and mu (explicit or cross-validated)
/// on `training`.
Hyperparams resolve_hyperparams(const ExperimentConfig& cfg, const TimeSeries& training, Objective objective,
                                std::uint64_t seed);

struct ReportRow {
    std::string seed;
    std::string method;
    MetricReport report;
};

struct ImputeOutcome {
    LoadedSeries data;
    ImputationResult result;
    Hyperparams hyper;
    std::vector<ReportRow> reports;
};

struct ForecastOutcome {
    LoadedSeries data;
    std::size_t t_from = 0;
    TimeSeries forecast;
    TimeSeries naive;
    Hyperparams hyper;
    std::vector<ReportRow> reports;
};

ImputeOutcome run_impute(const ExperimentConfig& cfg, std::uint64_t seed);
/// Fits on the first 70% of the series and forecasts the rest one step ahead.
ForecastOutcome run_forecast(const ExperimentConfig& cfg, std::uint64_t seed);

/// Forecast of X(t) as the most recent observed value before t.
TimeSeries naive_last_value(const TimeSeries& series, std::size_t t_from, std::size_t t_to);

CsvTable generate_table(const ExperimentConfig& cfg, std::uint64_t seed);
CsvTable imputation_table(const ImputeOutcome& outcome);
CsvTable forecast_table(const ForecastOutcome& outcome);
CsvTable report_table(const std::vector<ReportRow>& rows);
CsvTable cv_table(const CvResult& result);

/// `<dir>/<stem>.report.csv` next to the main output.
std::filesystem::path report_path(const std::filesystem::path& output);

void cmd_generate(const ExperimentConfig& cfg);
ImputeOutcome cmd_impute(const ExperimentConfig& cfg);
ForecastOutcome cmd_forecast(const ExperimentConfig& cfg);
CvResult cmd_cv(const ExperimentConfig& cfg);
/// Runs the task for every seed and writes per-seed rows followed by
/// per-(method, subset) median rows (seed = "median").
std::vector<ReportRow> cmd_eval(const ExperimentConfig& cfg);

}  // namespace tsme
