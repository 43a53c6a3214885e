#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsme/matrix_estimation.hpp"
#include "tsme/time_series.hpp"

namespace tsme {

enum class Objective { imputation_rmse, forecast_rmse };

std::string to_string(Objective o);

/// Fraction of the training data reserved for validation.
inline constexpr double kValidationFraction = 0.3;

struct CvGrid {
    std::vector<double> mu_candidates;
    std::vector<std::size_t> rows_candidates;
    Objective objective = Objective::imputation_rmse;
    std::uint64_t seed = 0;
    ClipPolicy clip = ClipToObserved{};

    void validate() const;
};

struct CvScore {
    std::size_t rows = 0;
    double mu = 0.0;
    std::optional<double> score;  ///< validation RMSE; empty when infeasible
    std::string status;           ///< "ok" or the reason the candidate was skipped
};

struct CvResult {
    double mu = 0.0;
    std::size_t rows = 0;
    double score = 0.0;
    std::vector<CvScore> table;  ///< ordered by (L, mu) as given in the grid
};

/// mu in {0.1, 0.2, ..., 3.0}; L in {floor(T^(1/3)) / 2, floor(T^(1/3)), 2 floor(T^(1/3))}
/// with infeasible values (L < 2) dropped.
CvGrid default_grid(std::size_t length, Objective objective, std::uint64_t seed);

/// Imputation: hide an i.i.d. 30% of the observed entries, impute, and score
/// RMSE on the hidden ones. Forecast: fit on the first 70%, score one-step
/// forecasts on the last 30%. Ties prefer smaller L, then smaller mu.
CvResult select_hyperparams(const TimeSeries& series, const CvGrid& grid);

/// Training prefix length floor(0.7 T) used by the forecast objective and the
/// evaluation protocol.
std::size_t training_prefix(std::size_t length);

}  // namespace tsme
