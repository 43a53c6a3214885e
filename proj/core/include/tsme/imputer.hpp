#pragma once

#include <cstddef>

#include "tsme/matrix_estimation.hpp"
#include "tsme/time_series.hpp"

namespace tsme {

struct ImputationResult {
    /// Same length as the input. Indices 1..covered_last hold de-noised
    /// estimates; the uncovered tail carries the raw observations.
    TimeSeries f_hat;
    std::size_t covered_last = 0;  ///< L * N
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t rank_retained = 0;
    double p_hat = 1.0;

    bool covered(std::size_t t) const noexcept { return t >= 1 && t <= covered_last; }
};

/// floor(T^(1/3)), so that N is roughly L^2; never below 2.
std::size_t default_rows(std::size_t length);

ImputationResult impute(const TimeSeries& series, std::size_t rows, const UsvtConfig& cfg);
ImputationResult impute(const TimeSeries& series, std::size_t rows, const MatrixEstimator& estimator);

/// ||f_hat - f||^2 / ||f||^2.
double mse_relative(const TimeSeries& f_hat, const TimeSeries& f);

}  // namespace tsme
