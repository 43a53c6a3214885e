#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tsme {

/// (1 / mn) sum (a_ij - b_ij)^2.
double matrix_mse(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
double matrix_rmse(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
/// Max row sum error: (1 / sqrt(n)) max_i ||a_i - b_i||_2.
double matrix_mrse(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

enum class Subset { all, missing_only, forecast_horizon };

std::string to_string(Subset s);

struct MetricReport {
    double mse = 0.0;
    double rmse = 0.0;
    std::optional<double> r2;  ///< absent when the truth is constant on the subset
    std::size_t n_points = 0;
    Subset subset = Subset::all;
};

/// Mean squared error over entries with include[i] set.
double series_mse(std::span<const double> pred, std::span<const double> truth, const std::vector<bool>& include);

/// 1 - SS_res / SS_tot over the subset. Throws on an empty subset or a
/// constant truth.
double r_squared(std::span<const double> pred, std::span<const double> truth, const std::vector<bool>& include);

MetricReport score(std::span<const double> pred, std::span<const double> truth, const std::vector<bool>& include,
                   Subset subset);

}  // namespace tsme
