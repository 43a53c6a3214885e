#pragma once

#include <cstddef>
#include <optional>
#include <variant>

#include <Eigen/Dense>

#include "tsme/series_matrix.hpp"

namespace tsme {

/// Clip estimates to [min, max] of the observed inputs (the default).
struct ClipToObserved {};
/// Leave estimates unclipped.
struct NoClip {};
struct ClipRange {
    double low;
    double high;
};
using ClipPolicy = std::variant<ClipToObserved, NoClip, ClipRange>;

struct UsvtConfig {
    double mu = 0.0;  ///< singular value threshold multiplier
    ClipPolicy clip = ClipToObserved{};

    void validate() const;
};

struct MatrixEstimate {
    Eigen::MatrixXd m_hat;
    double p_hat = 1.0;
    std::size_t rank_retained = 0;
};

/// Thin SVD a = u diag(s) v^T, singular values descending.
struct Svd {
    Eigen::MatrixXd u;
    Eigen::VectorXd s;
    Eigen::MatrixXd v;
};

/// Throws NumericalError on non-convergence or non-finite input.
Svd thin_svd(const Eigen::MatrixXd& a);

/// max(observed / (m n), 1 / (m n)).
double estimate_p_hat(const MaskedMatrix& x);

Eigen::MatrixXd zero_fill(const MaskedMatrix& x);

/// Universal singular value thresholding: zero-fill, keep singular values
/// sigma >= mu * sqrt(max(m, n) * p_hat), rescale by 1 / p_hat, clip.
MatrixEstimate usvt(const MaskedMatrix& x, const UsvtConfig& cfg);

/// Holds the decomposition of one zero-filled matrix so that many
/// thresholds can be evaluated for the price of a single SVD.
class UsvtSweep {
public:
    explicit UsvtSweep(const MaskedMatrix& x);

    MatrixEstimate estimate(const UsvtConfig& cfg) const;

    double p_hat() const noexcept { return p_hat_; }
    double threshold(double mu) const;
    std::size_t retained_rank(double mu) const;
    const Eigen::VectorXd& singular_values() const noexcept { return svd_.s; }

private:
    std::size_t rows_;
    std::size_t cols_;
    double p_hat_;
    std::optional<ClipRange> observed_range_;
    Svd svd_;
};

/// Pluggable matrix-estimation routine ME(.).
class MatrixEstimator {
public:
    virtual ~MatrixEstimator() = default;
    virtual MatrixEstimate estimate(const MaskedMatrix& x) const = 0;
};

class UsvtEstimator final : public MatrixEstimator {
public:
    explicit UsvtEstimator(UsvtConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }
    MatrixEstimate estimate(const MaskedMatrix& x) const override { return usvt(x, cfg_); }
    const UsvtConfig& config() const noexcept { return cfg_; }

private:
    UsvtConfig cfg_;
};

/// Relative cutoff eps * max(m, n).
double default_pinv_tolerance(Eigen::Index rows, Eigen::Index cols);

/// Moore-Penrose pseudoinverse keeping singular values sigma > tol * sigma_max.
/// `tol` is relative; defaults to default_pinv_tolerance.
Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& a, std::optional<double> tol = std::nullopt);
Eigen::MatrixXd pseudoinverse(const Svd& svd, double tol);

/// Minimum-norm least-squares solution of design * x ~= target.
Eigen::VectorXd least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
                              std::optional<double> tol = std::nullopt);

}  // namespace tsme
