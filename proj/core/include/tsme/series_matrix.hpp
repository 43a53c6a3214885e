#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "tsme/time_series.hpp"

namespace tsme {

/// m x n grid of optionally-observed reals, column-major, 0-based (row, col).
class MaskedMatrix {
public:
    MaskedMatrix() = default;
    MaskedMatrix(std::size_t rows, std::size_t cols);
    MaskedMatrix(std::size_t rows, std::size_t cols, std::vector<Observation> entries);

    static MaskedMatrix from_dense(const Eigen::MatrixXd& m);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    const Observation& operator()(std::size_t i, std::size_t j) const { return entries_[j * rows_ + i]; }
    Observation& operator()(std::size_t i, std::size_t j) { return entries_[j * rows_ + i]; }

    std::size_t observed_count() const noexcept;
    bool is_dense() const noexcept { return observed_count() == entries_.size(); }

    /// Rows [first, first + count), 0-based.
    MaskedMatrix row_block(std::size_t first, std::size_t count) const;

    friend bool operator==(const MaskedMatrix&, const MaskedMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Observation> entries_;
};

/// Non-overlapping Page matrix X^(k): cell (i, j), 1-based, holds series
/// index i + (j - 1) L + (k - 1).
class PageMatrix {
public:
    PageMatrix(MaskedMatrix grid, std::size_t shift);

    std::size_t rows() const noexcept { return grid_.rows(); }
    std::size_t cols() const noexcept { return grid_.cols(); }
    std::size_t shift() const noexcept { return shift_; }
    const MaskedMatrix& grid() const noexcept { return grid_; }

    /// 1-based cell access.
    const Observation& at(std::size_t i, std::size_t j) const { return grid_(i - 1, j - 1); }

    /// Series index (1-based) held at cell (i, j) (1-based).
    std::size_t series_index(std::size_t i, std::size_t j) const noexcept {
        return i + (j - 1) * rows() + (shift_ - 1);
    }

private:
    MaskedMatrix grid_;
    std::size_t shift_;
};

struct RowSplit {
    MaskedMatrix top;               ///< first L - 1 rows
    std::vector<Observation> last;  ///< row L
};

/// N = floor(T / L) - 1; zero when the series is too short.
std::size_t page_columns(std::size_t series_length, std::size_t rows);

/// Builds X^(k) with N = floor(T / L) - 1 columns.
PageMatrix build_page_matrix(const TimeSeries& series, std::size_t rows, std::size_t shift);

/// Inverse of build_page_matrix on dense input: the series segment covering
/// indices k .. L N + k - 1.
TimeSeries flatten_imputed(const Eigen::MatrixXd& grid, std::size_t shift);
TimeSeries flatten_imputed(const MaskedMatrix& grid, std::size_t shift);

RowSplit split_rows(const MaskedMatrix& grid);
inline RowSplit split_rows(const PageMatrix& page) { return split_rows(page.grid()); }

}  // namespace tsme
