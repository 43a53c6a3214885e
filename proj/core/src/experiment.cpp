#include "tsme/experiment.hpp"

#include <algorithm>
#include <map>

#include "tsme/forecaster.hpp"
#include "tsme/parallel.hpp"

namespace tsme {

namespace {

const std::filesystem::path& require_output(const ExperimentConfig& cfg) {
    if (cfg.output.empty()) {
        throw ConfigError("no output path: set 'output' in the config or pass --output");
    }
    return cfg.output;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<double> column_values(const TimeSeries& s) {
    std::vector<double> out;
    out.reserve(s.size());
    for (const auto& v : s.values()) out.push_back(v.value_or(0.0));
    return out;
}

}  // namespace

LoadedSeries load_series(const ExperimentConfig& cfg, std::uint64_t seed) {
    LoadedSeries out;
    if (const auto* spec = std::get_if<GeneratorSpec>(&cfg.source)) {
        const TimeSeries mean = generate_mean(*spec, cfg.length);
        out.observed = apply_mask(apply_noise(mean, cfg.noise, seed), MaskSpec{cfg.p, seed});
        out.truth = latent_target(mean, cfg.noise);
    } else {
        SeriesData data = read_series_csv(std::get<std::filesystem::path>(cfg.source));
        out.observed = cfg.p < 1.0 ? apply_mask(data.observed, MaskSpec{cfg.p, seed}) : std::move(data.observed);
        out.truth = std::move(data.truth);
    }
    return out;
}

Hyperparams resolve_hyperparams(const ExperimentConfig& cfg, const TimeSeries& training, Objective objective,
                                std::uint64_t seed) {
    Hyperparams hp;
    if (const auto* mu = std::get_if<double>(&cfg.mu)) {
        hp.mu = *mu;
        hp.rows = std::holds_alternative<std::size_t>(cfg.rows) ? std::get<std::size_t>(cfg.rows)
                                                                : default_rows(training.size());
        return hp;
    }
    CvGrid grid = default_grid(training.size(), objective, seed);
    if (!cfg.cv_mu.empty()) grid.mu_candidates = cfg.cv_mu;
    if (const auto* rows = std::get_if<std::size_t>(&cfg.rows)) {
        grid.rows_candidates = {*rows};
    } else if (!cfg.cv_rows.empty()) {
        grid.rows_candidates = cfg.cv_rows;
    }
    hp.cv = select_hyperparams(training, grid);
    hp.rows = hp.cv->rows;
    hp.mu = hp.cv->mu;
    return hp;
}

ImputeOutcome run_impute(const ExperimentConfig& cfg, std::uint64_t seed) {
    ImputeOutcome out;
    out.data = load_series(cfg, seed);
    out.hyper = resolve_hyperparams(cfg, out.data.observed, Objective::imputation_rmse, seed);
    out.result = impute(out.data.observed, out.hyper.rows, UsvtConfig{out.hyper.mu, ClipToObserved{}});

    if (out.data.truth) {
        const std::size_t n = out.data.observed.size();
        const auto pred = column_values(out.result.f_hat);
        const auto truth = column_values(*out.data.truth);
        std::vector<bool> all(n, false);
        std::vector<bool> missing(n, false);
        for (std::size_t t = 1; t <= out.result.covered_last; ++t) {
            all[t - 1] = true;
            missing[t - 1] = !out.data.observed.observed(t);
        }
        const std::string s = std::to_string(seed);
        if (std::find(missing.begin(), missing.end(), true) != missing.end()) {
            out.reports.push_back({s, "pipeline", score(pred, truth, missing, Subset::missing_only)});
        }
        out.reports.push_back({s, "pipeline", score(pred, truth, all, Subset::all)});
    }
    return out;
}

TimeSeries naive_last_value(const TimeSeries& series, std::size_t t_from, std::size_t t_to) {
    std::optional<double> last;
    std::vector<Observation> out;
    for (std::size_t t = 1; t <= t_to; ++t) {
        if (t >= t_from) out.emplace_back(last.value_or(0.0));
        if (t <= series.size() && series.observed(t)) last = *series.at(t);
    }
    return TimeSeries(std::move(out));
}

ForecastOutcome run_forecast(const ExperimentConfig& cfg, std::uint64_t seed) {
    ForecastOutcome out;
    out.data = load_series(cfg, seed);
    const std::size_t n = out.data.observed.size();
    const std::size_t train_len = training_prefix(n);
    if (train_len < 2 || train_len >= n) {
        throw InvalidArgument("forecast: series of length " + std::to_string(n) + " is too short to split 70/30");
    }
    const TimeSeries train = out.data.observed.slice(1, train_len);
    out.hyper = resolve_hyperparams(cfg, train, Objective::forecast_rmse, seed);
    const ForecastModel model = fit(train, out.hyper.rows, UsvtConfig{out.hyper.mu, ClipToObserved{}});
    out.t_from = train_len + 1;
    out.forecast = forecast_range(model, out.data.observed, out.t_from, n);
    out.naive = naive_last_value(out.data.observed, out.t_from, n);

    // Score against the mean when known, else against the held-out observations.
    const std::size_t h = n - train_len;
    std::vector<double> truth(h, 0.0);
    std::vector<bool> include(h, false);
    for (std::size_t i = 0; i < h; ++i) {
        const std::size_t t = out.t_from + i;
        const Observation target = out.data.truth ? out.data.truth->at(t) : out.data.observed.at(t);
        if (target) {
            truth[i] = *target;
            include[i] = true;
        }
    }
    if (std::find(include.begin(), include.end(), true) != include.end()) {
        const std::string s = std::to_string(seed);
        out.reports.push_back(
            {s, "pipeline", score(column_values(out.forecast), truth, include, Subset::forecast_horizon)});
        out.reports.push_back(
            {s, "naive_last_value", score(column_values(out.naive), truth, include, Subset::forecast_horizon)});
    }
    return out;
}

CsvTable generate_table(const ExperimentConfig& cfg, std::uint64_t seed) {
    if (!cfg.synthetic()) {
        throw ConfigError("generate needs a generator source (component.* keys), not a file");
    }
    const LoadedSeries data = load_series(cfg, seed);
    CsvTable table{{"t", "mean", "observed"}, {}};
    table.rows.reserve(data.observed.size());
    for (std::size_t t = 1; t <= data.observed.size(); ++t) {
        table.rows.push_back(
            {std::to_string(t), format_observation(data.truth->at(t)), format_observation(data.observed.at(t))});
    }
    return table;
}

CsvTable imputation_table(const ImputeOutcome& outcome) {
    CsvTable table{{"t", "observed", "imputed", "covered"}, {}};
    const auto& r = outcome.result;
    for (std::size_t t = 1; t <= r.f_hat.size(); ++t) {
        table.rows.push_back({std::to_string(t), format_observation(outcome.data.observed.at(t)),
                              format_observation(r.f_hat.at(t)), r.covered(t) ? "1" : "0"});
    }
    return table;
}

CsvTable forecast_table(const ForecastOutcome& outcome) {
    CsvTable table{{"t", "observed", "forecast"}, {}};
    for (std::size_t i = 0; i < outcome.forecast.size(); ++i) {
        const std::size_t t = outcome.t_from + i;
        table.rows.push_back({std::to_string(t), format_observation(outcome.data.observed.at(t)),
                              format_observation(outcome.forecast.at(i + 1))});
    }
    return table;
}

CsvTable report_table(const std::vector<ReportRow>& rows) {
    CsvTable table{{"seed", "method", "subset", "n_points", "mse", "rmse", "r2"}, {}};
    for (const auto& row : rows) {
        const auto& r = row.report;
        table.rows.push_back({row.seed, row.method, to_string(r.subset), std::to_string(r.n_points),
                              format_real(r.mse), format_real(r.rmse), format_observation(r.r2)});
    }
    return table;
}

CsvTable cv_table(const CvResult& result) {
    CsvTable table{{"L", "mu", "score", "status", "selected"}, {}};
    for (const auto& s : result.table) {
        const bool selected = s.score && s.rows == result.rows && s.mu == result.mu;
        std::string status = s.status;
        std::replace(status.begin(), status.end(), ',', ';');
        table.rows.push_back(
            {std::to_string(s.rows), format_real(s.mu), format_observation(s.score), status, selected ? "1" : "0"});
    }
    return table;
}

std::filesystem::path report_path(const std::filesystem::path& output) {
    return output.parent_path() / (output.stem().string() + ".report.csv");
}

void cmd_generate(const ExperimentConfig& cfg) {
    const auto& output = require_output(cfg);
    write_csv_file(output, generate_table(cfg, cfg.seeds.front()));
}

ImputeOutcome cmd_impute(const ExperimentConfig& cfg) {
    const auto& output = require_output(cfg);
    if (cfg.task == Task::forecast) {
        throw ConfigError("impute: config task is 'forecast'");
    }
    ImputeOutcome outcome = run_impute(cfg, cfg.seeds.front());
    write_csv_file(output, imputation_table(outcome));
    if (!outcome.reports.empty()) write_csv_file(report_path(output), report_table(outcome.reports));
    return outcome;
}

ForecastOutcome cmd_forecast(const ExperimentConfig& cfg) {
    const auto& output = require_output(cfg);
    ForecastOutcome outcome = run_forecast(cfg, cfg.seeds.front());
    write_csv_file(output, forecast_table(outcome));
    if (!outcome.reports.empty()) write_csv_file(report_path(output), report_table(outcome.reports));
    return outcome;
}

CvResult cmd_cv(const ExperimentConfig& cfg) {
    const auto& output = require_output(cfg);
    const std::uint64_t seed = cfg.seeds.front();
    const LoadedSeries data = load_series(cfg, seed);
    ExperimentConfig cv_cfg = cfg;
    cv_cfg.mu = MuFromCv{};
    Hyperparams hp;
    if (cfg.task == Task::forecast) {
        const std::size_t train_len = training_prefix(data.observed.size());
        if (train_len < 2) throw InvalidArgument("cv: series too short");
        hp = resolve_hyperparams(cv_cfg, data.observed.slice(1, train_len), Objective::forecast_rmse, seed);
    } else {
        hp = resolve_hyperparams(cv_cfg, data.observed, Objective::imputation_rmse, seed);
    }
    write_csv_file(output, cv_table(*hp.cv));
    return *hp.cv;
}

std::vector<ReportRow> cmd_eval(const ExperimentConfig& cfg) {
    const auto& output = require_output(cfg);
    std::vector<std::vector<ReportRow>> per_seed(cfg.seeds.size());
    parallel_for(cfg.seeds.size(), [&](std::size_t i) {
        per_seed[i] = cfg.task == Task::forecast ? run_forecast(cfg, cfg.seeds[i]).reports
                                                 : run_impute(cfg, cfg.seeds[i]).reports;
    });

    std::vector<ReportRow> rows;
    // Median rows keep first-appearance order of (method, subset).
    std::vector<std::pair<std::string, Subset>> keys;
    std::map<std::pair<std::string, Subset>, std::vector<MetricReport>> groups;
    for (const auto& block : per_seed) {
        for (const auto& row : block) {
            rows.push_back(row);
            const auto key = std::make_pair(row.method, row.report.subset);
            if (!groups.count(key)) keys.push_back(key);
            groups[key].push_back(row.report);
        }
    }
    for (const auto& key : keys) {
        const auto& group = groups[key];
        std::vector<double> mse, rmse, r2, points;
        for (const auto& r : group) {
            mse.push_back(r.mse);
            rmse.push_back(r.rmse);
            points.push_back(static_cast<double>(r.n_points));
            if (r.r2) r2.push_back(*r.r2);
        }
        MetricReport m;
        m.subset = key.second;
        m.mse = median(mse);
        m.rmse = median(rmse);
        m.n_points = static_cast<std::size_t>(median(points));
        if (r2.size() == group.size()) m.r2 = median(r2);
        rows.push_back({"median", key.first, m});
    }
    write_csv_file(output, report_table(rows));
    return rows;
}

}  // namespace tsme
