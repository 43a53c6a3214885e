#include "tsme/cross_validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tsme/forecaster.hpp"
#include "tsme/imputer.hpp"
#include "tsme/parallel.hpp"
#include "tsme/random.hpp"
#include "tsme/series_matrix.hpp"

namespace tsme {

namespace {

struct HiddenSplit {
    TimeSeries visible;
    std::vector<std::size_t> hidden;  // 1-based indices
};

HiddenSplit hide_entries(const TimeSeries& series, std::uint64_t seed) {
    std::vector<Observation> visible(series.values().begin(), series.values().end());
    std::vector<std::size_t> hidden;
    for (std::size_t i = 0; i < visible.size(); ++i) {
        if (!visible[i]) continue;
        IndexStream rng(seed, Channel::validation, i + 1);
        if (rng.uniform() < kValidationFraction) {
            hidden.push_back(i + 1);
            visible[i].reset();
        }
    }
    return {TimeSeries(std::move(visible)), std::move(hidden)};
}

std::vector<CvScore> score_imputation(const TimeSeries& series, const HiddenSplit& split, std::size_t rows,
                                      const CvGrid& grid) {
    std::vector<CvScore> out;
    auto infeasible = [&](const std::string& why) {
        for (double mu : grid.mu_candidates) out.push_back({rows, mu, std::nullopt, why});
        return out;
    };
    if (rows < 2 || page_columns(series.size(), rows) < 1) {
        return infeasible("infeasible: series too short for L");
    }
    const PageMatrix page = build_page_matrix(split.visible, rows, 1);
    const std::size_t covered = page.rows() * page.cols();
    std::vector<std::size_t> scored;
    for (std::size_t t : split.hidden) {
        if (t <= covered) scored.push_back(t);
    }
    if (scored.empty()) {
        return infeasible("infeasible: no held-out entries in covered range");
    }
    const UsvtSweep sweep(page.grid());
    for (double mu : grid.mu_candidates) {
        const MatrixEstimate est = sweep.estimate(UsvtConfig{mu, grid.clip});
        const Eigen::Map<const Eigen::VectorXd> flat(est.m_hat.data(), est.m_hat.size());
        double sum = 0.0;
        for (std::size_t t : scored) {
            const double d = flat(static_cast<Eigen::Index>(t - 1)) - *series.at(t);
            sum += d * d;
        }
        out.push_back({rows, mu, std::sqrt(sum / static_cast<double>(scored.size())), "ok"});
    }
    return out;
}

std::vector<CvScore> score_forecast(const TimeSeries& series, std::size_t rows, const CvGrid& grid) {
    std::vector<CvScore> out;
    auto infeasible = [&](const std::string& why) {
        for (double mu : grid.mu_candidates) out.push_back({rows, mu, std::nullopt, why});
        return out;
    };
    const std::size_t train_len = training_prefix(series.size());
    if (rows < 2 || page_columns(train_len, rows) < 2) {
        return infeasible("infeasible: training prefix too short for L");
    }
    if (train_len + 1 <= rows) {
        return infeasible("infeasible: validation starts inside the first window");
    }
    const TimeSeries train = series.slice(1, train_len);

    std::vector<std::size_t> targets;
    for (std::size_t t = train_len + 1; t <= series.size(); ++t) {
        if (series.observed(t)) targets.push_back(t);
    }
    if (targets.empty()) {
        return infeasible("infeasible: no observed validation entries");
    }

    std::vector<std::optional<UsvtSweep>> sweeps(rows);
    for (double mu : grid.mu_candidates) {
        try {
            const ForecastModel model = fit_with(
                train, rows,
                [&](std::size_t k, const MaskedMatrix& top) {
                    if (!sweeps[k - 1]) sweeps[k - 1].emplace(top);
                    return sweeps[k - 1]->estimate(UsvtConfig{mu, grid.clip}).m_hat;
                });
            const TimeSeries pred = forecast_range(model, series, train_len + 1, series.size());
            double sum = 0.0;
            for (std::size_t t : targets) {
                const double d = *pred.at(t - train_len) - *series.at(t);
                sum += d * d;
            }
            out.push_back({rows, mu, std::sqrt(sum / static_cast<double>(targets.size())), "ok"});
        } catch (const InvalidArgument& e) {
            out.push_back({rows, mu, std::nullopt, std::string("infeasible: ") + e.what()});
        } catch (const NumericalError& e) {
            out.push_back({rows, mu, std::nullopt, std::string("failed: ") + e.what()});
        }
    }
    return out;
}

}  // namespace

std::string to_string(Objective o) {
    return o == Objective::imputation_rmse ? "imputation_rmse" : "forecast_rmse";
}

std::size_t training_prefix(std::size_t length) {
    return static_cast<std::size_t>(std::floor((1.0 - kValidationFraction) * static_cast<double>(length)));
}

void CvGrid::validate() const {
    if (mu_candidates.empty() || rows_candidates.empty()) {
        throw InvalidArgument("CvGrid: candidate lists must be non-empty");
    }
    for (double mu : mu_candidates) {
        if (!(mu >= 0.0) || !std::isfinite(mu)) {
            throw InvalidArgument("CvGrid: mu candidates must be finite and >= 0");
        }
    }
    for (std::size_t l : rows_candidates) {
        if (l < 2) throw InvalidArgument("CvGrid: L candidates must be >= 2");
    }
}

CvGrid default_grid(std::size_t length, Objective objective, std::uint64_t seed) {
    CvGrid grid;
    grid.objective = objective;
    grid.seed = seed;
    for (int i = 1; i <= 30; ++i) grid.mu_candidates.push_back(i / 10.0);
    const std::size_t base = default_rows(objective == Objective::forecast_rmse ? training_prefix(length) : length);
    for (std::size_t l : {base / 2, base, 2 * base}) {
        if (l >= 2 && std::find(grid.rows_candidates.begin(), grid.rows_candidates.end(), l) ==
                          grid.rows_candidates.end()) {
            grid.rows_candidates.push_back(l);
        }
    }
    return grid;
}

CvResult select_hyperparams(const TimeSeries& series, const CvGrid& grid) {
    grid.validate();
    std::optional<HiddenSplit> split;
    if (grid.objective == Objective::imputation_rmse) split = hide_entries(series, grid.seed);

    std::vector<std::vector<CvScore>> per_rows(grid.rows_candidates.size());
    parallel_for(grid.rows_candidates.size(), [&](std::size_t i) {
        const std::size_t rows = grid.rows_candidates[i];
        per_rows[i] = grid.objective == Objective::imputation_rmse ? score_imputation(series, *split, rows, grid)
                                                                   : score_forecast(series, rows, grid);
    });

    CvResult result;
    for (auto& block : per_rows) {
        for (auto& s : block) result.table.push_back(std::move(s));
    }
    const CvScore* best = nullptr;
    for (const auto& s : result.table) {
        if (!s.score) continue;
        if (best == nullptr || *s.score < *best->score ||
            (*s.score == *best->score && (s.rows < best->rows || (s.rows == best->rows && s.mu < best->mu)))) {
            best = &s;
        }
    }
    if (best == nullptr) {
        throw InvalidArgument("select_hyperparams: every grid candidate is infeasible");
    }
    result.mu = best->mu;
    result.rows = best->rows;
    result.score = *best->score;
    return result;
}

}  // namespace tsme
