#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "tsme/matrix_estimation.hpp"
#include "tsme/time_series.hpp"

namespace tsme {

/// Last-row regression on de-noised Page matrices, one slot per shift k.
class ForecastModel {
public:
    /// `betas[k-1]` has length L - 1, `features[k-1]` is (L - 1) x N'
    /// (N' may exceed N, e.g. with padding columns).
    ForecastModel(std::size_t rows, std::size_t training_length, std::vector<Eigen::VectorXd> betas,
                  std::vector<Eigen::MatrixXd> features, double pinv_tol);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t training_length() const noexcept { return training_length_; }
    double pinv_tol() const noexcept { return pinv_tol_; }

    /// 1-based shift slot.
    const Eigen::VectorXd& beta(std::size_t k) const { return betas_.at(k - 1); }
    const Eigen::MatrixXd& features(std::size_t k) const { return features_.at(k - 1); }

    /// P_k beta_k where P_k projects onto the column space of features(k);
    /// a forecast is then a single dot product with the window.
    const Eigen::VectorXd& predictor(std::size_t k) const { return predictors_.at(k - 1); }

    /// k = (t mod L) + 1.
    std::size_t shift_for(std::size_t t) const noexcept { return (t % rows_) + 1; }

private:
    std::size_t rows_;
    std::size_t training_length_;
    double pinv_tol_;
    std::vector<Eigen::VectorXd> betas_;
    std::vector<Eigen::MatrixXd> features_;
    std::vector<Eigen::VectorXd> predictors_;
};

struct ForecastQuery {
    std::size_t t = 0;
    std::vector<double> window;  ///< X(t - L + 1) .. X(t - 1)
};

/// De-noises the top (L - 1) rows of the shift-k Page matrix.
using ShiftDenoiser = std::function<Eigen::MatrixXd(std::size_t shift, const MaskedMatrix& top)>;

ForecastModel fit(const TimeSeries& series, std::size_t rows, const UsvtConfig& cfg,
                  std::optional<double> pinv_tol = std::nullopt);

/// Same as fit() with a caller-supplied de-noiser per shift.
ForecastModel fit_with(const TimeSeries& series, std::size_t rows, const ShiftDenoiser& denoise,
                       std::optional<double> pinv_tol = std::nullopt);

/// Projects the window onto the learned column space and applies beta.
double forecast_one(const ForecastModel& model, const ForecastQuery& query);

/// Forecasts for t in [t_from, t_to]. Windows use observed values of
/// `series` where present and earlier forecasts otherwise.
TimeSeries forecast_range(const ForecastModel& model, const TimeSeries& series, std::size_t t_from,
                          std::size_t t_to);

}  // namespace tsme
