#include "tsme/metrics.hpp"

#include <cmath>

#include "tsme/errors.hpp"

namespace tsme {

namespace {

void require_same_shape(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidArgument("matrix metric: shape mismatch " + std::to_string(a.rows()) + "x" +
                              std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                              std::to_string(b.cols()));
    }
    if (a.size() == 0) {
        throw InvalidArgument("matrix metric: empty matrices");
    }
}

void require_same_length(std::size_t a, std::size_t b, std::size_t c) {
    if (a != b || a != c) {
        throw InvalidArgument("series metric: length mismatch");
    }
}

}  // namespace

double matrix_mse(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    require_same_shape(a, b);
    return (a - b).squaredNorm() / static_cast<double>(a.size());
}

double matrix_rmse(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return std::sqrt(matrix_mse(a, b)); }

double matrix_mrse(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    require_same_shape(a, b);
    const double worst = (a - b).rowwise().squaredNorm().maxCoeff();
    return std::sqrt(worst / static_cast<double>(a.cols()));
}

std::string to_string(Subset s) {
    switch (s) {
        case Subset::all: return "all";
        case Subset::missing_only: return "missing_only";
        case Subset::forecast_horizon: return "forecast_horizon";
    }
    return "all";
}

double series_mse(std::span<const double> pred, std::span<const double> truth, const std::vector<bool>& include) {
    require_same_length(pred.size(), truth.size(), include.size());
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (!include[i]) continue;
        const double d = pred[i] - truth[i];
        sum += d * d;
        ++n;
    }
    if (n == 0) {
        throw InvalidArgument("series metric: empty subset");
    }
    return sum / static_cast<double>(n);
}

double r_squared(std::span<const double> pred, std::span<const double> truth, const std::vector<bool>& include) {
    require_same_length(pred.size(), truth.size(), include.size());
    double mean = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (include[i]) {
            mean += truth[i];
            ++n;
        }
    }
    if (n == 0) {
        throw InvalidArgument("r_squared: empty subset");
    }
    mean /= static_cast<double>(n);
    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (!include[i]) continue;
        ss_res += (pred[i] - truth[i]) * (pred[i] - truth[i]);
        ss_tot += (truth[i] - mean) * (truth[i] - mean);
    }
    if (!(ss_tot > 0.0)) {
        throw InvalidArgument("r_squared: truth is constant on the subset");
    }
    return 1.0 - ss_res / ss_tot;
}

MetricReport score(std::span<const double> pred, std::span<const double> truth, const std::vector<bool>& include,
                   Subset subset) {
    MetricReport r;
    r.subset = subset;
    r.mse = series_mse(pred, truth, include);
    r.rmse = std::sqrt(r.mse);
    for (bool b : include) r.n_points += b;
    try {
        r.r2 = r_squared(pred, truth, include);
    } catch (const InvalidArgument&) {
        r.r2.reset();
    }
    return r;
}

}  // namespace tsme
