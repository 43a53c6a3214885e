#include "tsme/forecaster.hpp"

#include <cmath>
#include <string>

#include "tsme/parallel.hpp"
#include "tsme/series_matrix.hpp"

namespace tsme {

ForecastModel::ForecastModel(std::size_t rows, std::size_t training_length, std::vector<Eigen::VectorXd> betas,
                             std::vector<Eigen::MatrixXd> features, double pinv_tol)
    : rows_(rows),
      training_length_(training_length),
      pinv_tol_(pinv_tol),
      betas_(std::move(betas)),
      features_(std::move(features)) {
    if (rows_ < 2) {
        throw InvalidArgument("ForecastModel: L must be >= 2");
    }
    if (betas_.size() != rows_ || features_.size() != rows_) {
        throw InvalidArgument("ForecastModel: expected exactly L shift slots");
    }
    predictors_.reserve(rows_);
    for (std::size_t k = 0; k < rows_; ++k) {
        const auto dim = static_cast<Eigen::Index>(rows_ - 1);
        if (betas_[k].size() != dim || features_[k].rows() != dim) {
            throw InvalidArgument("ForecastModel: shift " + std::to_string(k + 1) + " has wrong dimensions");
        }
        if (!betas_[k].allFinite() || !features_[k].allFinite()) {
            throw NumericalError(rows_ - 1, static_cast<std::size_t>(features_[k].cols()),
                                 "ForecastModel: non-finite parameters at shift " + std::to_string(k + 1));
        }
        const Eigen::MatrixXd& m = features_[k];
        predictors_.push_back(m * (pseudoinverse(m, pinv_tol_) * betas_[k]));
    }
}

ForecastModel fit(const TimeSeries& series, std::size_t rows, const UsvtConfig& cfg, std::optional<double> pinv_tol) {
    cfg.validate();
    return fit_with(
        series, rows, [&cfg](std::size_t, const MaskedMatrix& top) { return usvt(top, cfg).m_hat; }, pinv_tol);
}

ForecastModel fit_with(const TimeSeries& series, std::size_t rows, const ShiftDenoiser& denoise,
                       std::optional<double> pinv_tol) {
    if (rows < 2) {
        throw InvalidArgument("fit: L must be >= 2");
    }
    const std::size_t cols = page_columns(series.size(), rows);
    if (cols < 2) {
        throw InvalidArgument("fit: series of length " + std::to_string(series.size()) +
                              " gives fewer than 2 columns at L=" + std::to_string(rows));
    }
    const double tol =
        pinv_tol.value_or(default_pinv_tolerance(static_cast<Eigen::Index>(cols), static_cast<Eigen::Index>(rows)));

    std::vector<Eigen::VectorXd> betas(rows);
    std::vector<Eigen::MatrixXd> features(rows);
    parallel_for(rows, [&](std::size_t slot) {
        const std::size_t k = slot + 1;
        const RowSplit split = split_rows(build_page_matrix(series, rows, k));
        Eigen::MatrixXd m_tilde = denoise(k, split.top);

        std::vector<Eigen::Index> kept;
        for (std::size_t j = 0; j < split.last.size(); ++j) {
            if (split.last[j]) kept.push_back(static_cast<Eigen::Index>(j));
        }
        if (kept.empty()) {
            throw InvalidArgument("fit: shift k=" + std::to_string(k) + " has no observed last-row entries");
        }
        // Columns with a missing target are left out of the regression only.
        Eigen::MatrixXd design(static_cast<Eigen::Index>(kept.size()), m_tilde.rows());
        Eigen::VectorXd target(static_cast<Eigen::Index>(kept.size()));
        for (Eigen::Index r = 0; r < design.rows(); ++r) {
            design.row(r) = m_tilde.col(kept[static_cast<std::size_t>(r)]).transpose();
            target(r) = *split.last[static_cast<std::size_t>(kept[static_cast<std::size_t>(r)])];
        }
        betas[slot] = least_squares(design, target, tol);
        features[slot] = std::move(m_tilde);
    });
    return ForecastModel(rows, series.size(), std::move(betas), std::move(features), tol);
}

double forecast_one(const ForecastModel& model, const ForecastQuery& query) {
    const std::size_t dim = model.rows() - 1;
    if (query.window.size() != dim) {
        throw InvalidArgument("forecast_one: window length " + std::to_string(query.window.size()) +
                              " != L - 1 = " + std::to_string(dim));
    }
    const Eigen::Map<const Eigen::VectorXd> v(query.window.data(), static_cast<Eigen::Index>(dim));
    if (!v.allFinite()) {
        throw InvalidArgument("forecast_one: window has non-finite values");
    }
    const std::size_t k = model.shift_for(query.t);
    const Eigen::MatrixXd& m = model.features(k);
    const Eigen::VectorXd alpha = least_squares(m, v, model.pinv_tol());
    const Eigen::VectorXd projected = m * alpha;
    return projected.dot(model.beta(k));
}

TimeSeries forecast_range(const ForecastModel& model, const TimeSeries& series, std::size_t t_from,
                          std::size_t t_to) {
    const std::size_t rows = model.rows();
    if (t_from <= rows) {
        throw InvalidArgument("forecast_range: t_from must exceed L=" + std::to_string(rows));
    }
    if (t_from <= model.training_length()) {
        throw InvalidArgument("forecast_range: t_from must lie beyond the training horizon " +
                              std::to_string(model.training_length()));
    }
    if (t_to < t_from) {
        throw InvalidArgument("forecast_range: empty range");
    }

    // buffer[t - 1] holds the value used for X(t) inside windows.
    std::vector<double> buffer(t_to, 0.0);
    auto raw = [&](std::size_t t) -> Observation {
        return t <= series.size() ? series.at(t) : Observation{};
    };

    // The first L - 1 values have no window of their own: fill gaps with the
    // nearest observation.
    std::optional<double> carry;
    for (std::size_t t = 1; t < rows; ++t) {
        if (raw(t)) {
            carry = *raw(t);
            break;
        }
    }
    for (std::size_t t = 1; t < rows; ++t) {
        if (raw(t)) carry = *raw(t);
        buffer[t - 1] = carry.value_or(0.0);
    }

    std::vector<Observation> out;
    out.reserve(t_to - t_from + 1);
    for (std::size_t t = rows; t <= t_to; ++t) {
        const Observation observed = raw(t);
        if (t < t_from && observed) {
            buffer[t - 1] = *observed;
            continue;
        }
        const Eigen::Map<const Eigen::VectorXd> window(buffer.data() + (t - rows), static_cast<Eigen::Index>(rows - 1));
        const double prediction = model.predictor(model.shift_for(t)).dot(window);
        if (!std::isfinite(prediction)) {
            const auto& m = model.features(model.shift_for(t));
            throw NumericalError(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()),
                                 "forecast_range: forecast diverged at t=" + std::to_string(t));
        }
        if (t >= t_from) out.emplace_back(prediction);
        buffer[t - 1] = observed ? *observed : prediction;
    }
    return TimeSeries(std::move(out));
}

}  // namespace tsme
