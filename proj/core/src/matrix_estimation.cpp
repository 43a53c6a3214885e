#include "tsme/matrix_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tsme {

namespace {

std::optional<ClipRange> observed_range(const MaskedMatrix& x) {
    std::optional<ClipRange> range;
    for (std::size_t j = 0; j < x.cols(); ++j) {
        for (std::size_t i = 0; i < x.rows(); ++i) {
            if (const auto& v = x(i, j)) {
                if (!range) {
                    range = ClipRange{*v, *v};
                } else {
                    range->low = std::min(range->low, *v);
                    range->high = std::max(range->high, *v);
                }
            }
        }
    }
    return range;
}

std::optional<ClipRange> resolve_clip(const ClipPolicy& policy, const std::optional<ClipRange>& observed) {
    if (std::holds_alternative<NoClip>(policy)) return std::nullopt;
    if (const auto* r = std::get_if<ClipRange>(&policy)) return *r;
    return observed;
}

}  // namespace

void UsvtConfig::validate() const {
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
        throw InvalidArgument("UsvtConfig: mu must be a finite nonnegative number");
    }
    if (const auto* r = std::get_if<ClipRange>(&clip)) {
        if (!(r->low <= r->high)) {
            throw InvalidArgument("UsvtConfig: clip range requires low <= high");
        }
    }
}

Svd thin_svd(const Eigen::MatrixXd& a) {
    if (!a.allFinite()) {
        throw NumericalError(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()),
                             "SVD input contains non-finite entries");
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success || !svd.singularValues().allFinite()) {
        throw NumericalError(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()),
                             "SVD failed to converge");
    }
    return Svd{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

double estimate_p_hat(const MaskedMatrix& x) {
    const double cells = static_cast<double>(x.rows() * x.cols());
    if (cells == 0.0) return 1.0;
    return std::max(static_cast<double>(x.observed_count()) / cells, 1.0 / cells);
}

Eigen::MatrixXd zero_fill(const MaskedMatrix& x) {
    Eigen::MatrixXd y(static_cast<Eigen::Index>(x.rows()), static_cast<Eigen::Index>(x.cols()));
    for (std::size_t j = 0; j < x.cols(); ++j) {
        for (std::size_t i = 0; i < x.rows(); ++i) {
            y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x(i, j).value_or(0.0);
        }
    }
    return y;
}

UsvtSweep::UsvtSweep(const MaskedMatrix& x)
    : rows_(x.rows()), cols_(x.cols()), p_hat_(estimate_p_hat(x)), observed_range_(observed_range(x)) {
    if (rows_ < 1 || cols_ < 1) {
        throw InvalidArgument("usvt: matrix must have at least one row and one column");
    }
    svd_ = thin_svd(zero_fill(x));
}

double UsvtSweep::threshold(double mu) const {
    return mu * std::sqrt(static_cast<double>(std::max(rows_, cols_)) * p_hat_);
}

std::size_t UsvtSweep::retained_rank(double mu) const {
    const double cutoff = threshold(mu);
    std::size_t rank = 0;
    // Exactly-zero singular values carry nothing and are never counted.
    for (Eigen::Index i = 0; i < svd_.s.size(); ++i) {
        if (svd_.s(i) > 0.0 && svd_.s(i) >= cutoff) ++rank;
    }
    return rank;
}

MatrixEstimate UsvtSweep::estimate(const UsvtConfig& cfg) const {
    cfg.validate();
    const auto rank = static_cast<Eigen::Index>(retained_rank(cfg.mu));
    MatrixEstimate out;
    out.p_hat = p_hat_;
    out.rank_retained = static_cast<std::size_t>(rank);
    if (rank == 0) {
        out.m_hat = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
    } else {
        out.m_hat = (svd_.u.leftCols(rank) * svd_.s.head(rank).asDiagonal() * svd_.v.leftCols(rank).transpose()) /
                    p_hat_;
    }
    if (const auto clip = resolve_clip(cfg.clip, observed_range_)) {
        out.m_hat = out.m_hat.cwiseMax(clip->low).cwiseMin(clip->high);
    }
    return out;
}

MatrixEstimate usvt(const MaskedMatrix& x, const UsvtConfig& cfg) {
    cfg.validate();
    return UsvtSweep(x).estimate(cfg);
}

double default_pinv_tolerance(Eigen::Index rows, Eigen::Index cols) {
    return std::numeric_limits<double>::epsilon() * static_cast<double>(std::max(rows, cols));
}

Eigen::MatrixXd pseudoinverse(const Svd& svd, double tol) {
    const Eigen::Index n = svd.s.size();
    const double smax = n > 0 ? svd.s(0) : 0.0;
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (svd.s(i) > tol * smax && svd.s(i) > 0.0) inv(i) = 1.0 / svd.s(i);
    }
    return svd.v * inv.asDiagonal() * svd.u.transpose();
}

Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& a, std::optional<double> tol) {
    const double rel = tol.value_or(default_pinv_tolerance(a.rows(), a.cols()));
    if (!(rel >= 0.0)) {
        throw InvalidArgument("pseudoinverse: tolerance must be nonnegative");
    }
    if (a.size() == 0) {
        return Eigen::MatrixXd::Zero(a.cols(), a.rows());
    }
    return pseudoinverse(thin_svd(a), rel);
}

Eigen::VectorXd least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
                              std::optional<double> tol) {
    if (design.rows() != target.size()) {
        throw InvalidArgument("least_squares: design has " + std::to_string(design.rows()) +
                              " rows but target has " + std::to_string(target.size()) + " entries");
    }
    return pseudoinverse(design, tol) * target;
}

}  // namespace tsme
