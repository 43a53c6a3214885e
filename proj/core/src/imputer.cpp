#include "tsme/imputer.hpp"

#include <cmath>

#include "tsme/series_matrix.hpp"

namespace tsme {

std::size_t default_rows(std::size_t length) {
    auto root = static_cast<std::size_t>(std::llround(std::cbrt(static_cast<double>(length))));
    while (root > 0 && root * root * root > length) --root;
    while ((root + 1) * (root + 1) * (root + 1) <= length) ++root;
    return std::max<std::size_t>(root, 2);
}

ImputationResult impute(const TimeSeries& series, std::size_t rows, const UsvtConfig& cfg) {
    return impute(series, rows, UsvtEstimator(cfg));
}

ImputationResult impute(const TimeSeries& series, std::size_t rows, const MatrixEstimator& estimator) {
    const PageMatrix page = build_page_matrix(series, rows, 1);
    const MatrixEstimate est = estimator.estimate(page.grid());
    const TimeSeries segment = flatten_imputed(est.m_hat, 1);

    std::vector<Observation> out(series.values().begin(), series.values().end());
    const auto covered = segment.values();
    std::copy(covered.begin(), covered.end(), out.begin());

    ImputationResult r;
    r.f_hat = TimeSeries(std::move(out));
    r.covered_last = covered.size();
    r.rows = page.rows();
    r.cols = page.cols();
    r.rank_retained = est.rank_retained;
    r.p_hat = est.p_hat;
    return r;
}

double mse_relative(const TimeSeries& f_hat, const TimeSeries& f) {
    if (f_hat.size() != f.size()) {
        throw InvalidArgument("mse_relative: length mismatch");
    }
    const auto a = f_hat.dense();
    const auto b = f.dense();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    if (!(den > 0.0)) {
        throw InvalidArgument("mse_relative: reference series has zero norm");
    }
    return num / den;
}

}  // namespace tsme
