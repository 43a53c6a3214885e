#include "tsme/series_matrix.hpp"

#include <string>

namespace tsme {

MaskedMatrix::MaskedMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

MaskedMatrix::MaskedMatrix(std::size_t rows, std::size_t cols, std::vector<Observation> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw InvalidArgument("MaskedMatrix: entry count does not match shape");
    }
}

MaskedMatrix MaskedMatrix::from_dense(const Eigen::MatrixXd& m) {
    MaskedMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
        }
    }
    return out;
}

std::size_t MaskedMatrix::observed_count() const noexcept {
    std::size_t n = 0;
    for (const auto& v : entries_) n += v.has_value();
    return n;
}

MaskedMatrix MaskedMatrix::row_block(std::size_t first, std::size_t count) const {
    if (first + count > rows_) {
        throw InvalidArgument("MaskedMatrix::row_block: rows out of range");
    }
    MaskedMatrix out(count, cols_);
    for (std::size_t j = 0; j < cols_; ++j) {
        for (std::size_t i = 0; i < count; ++i) {
            out(i, j) = (*this)(first + i, j);
        }
    }
    return out;
}

PageMatrix::PageMatrix(MaskedMatrix grid, std::size_t shift) : grid_(std::move(grid)), shift_(shift) {
    if (grid_.rows() < 2 || grid_.cols() < 1) {
        throw InvalidArgument("PageMatrix: need L >= 2 and N >= 1");
    }
    if (shift_ < 1 || shift_ > grid_.rows()) {
        throw InvalidArgument("PageMatrix: shift must lie in [1, L]");
    }
}

std::size_t page_columns(std::size_t series_length, std::size_t rows) {
    if (rows == 0) return 0;
    const std::size_t blocks = series_length / rows;
    return blocks == 0 ? 0 : blocks - 1;
}

PageMatrix build_page_matrix(const TimeSeries& series, std::size_t rows, std::size_t shift) {
    if (rows < 2) {
        throw InvalidArgument("build_page_matrix: L must be >= 2, got " + std::to_string(rows));
    }
    if (shift < 1 || shift > rows) {
        throw InvalidArgument("build_page_matrix: shift k=" + std::to_string(shift) + " outside [1, " +
                              std::to_string(rows) + "]");
    }
    const std::size_t cols = page_columns(series.size(), rows);
    if (cols < 1) {
        throw InvalidArgument("build_page_matrix: series of length " + std::to_string(series.size()) +
                              " too short for L=" + std::to_string(rows));
    }
    // The last cell holds index N L + k - 1 < (N + 1) L <= T, so every shift fits.
    const auto values = series.values();
    MaskedMatrix grid(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < rows; ++i) {
            grid(i, j) = values[i + j * rows + (shift - 1)];
        }
    }
    return PageMatrix(std::move(grid), shift);
}

TimeSeries flatten_imputed(const Eigen::MatrixXd& grid, std::size_t shift) {
    if (shift < 1) {
        throw InvalidArgument("flatten_imputed: shift must be >= 1");
    }
    std::vector<Observation> out;
    out.reserve(static_cast<std::size_t>(grid.size()));
    // Column-major storage is exactly the series order.
    for (Eigen::Index j = 0; j < grid.cols(); ++j) {
        for (Eigen::Index i = 0; i < grid.rows(); ++i) {
            out.emplace_back(grid(i, j));
        }
    }
    return TimeSeries(std::move(out));
}

TimeSeries flatten_imputed(const MaskedMatrix& grid, std::size_t shift) {
    if (shift < 1) {
        throw InvalidArgument("flatten_imputed: shift must be >= 1");
    }
    std::vector<Observation> out;
    out.reserve(grid.rows() * grid.cols());
    for (std::size_t j = 0; j < grid.cols(); ++j) {
        for (std::size_t i = 0; i < grid.rows(); ++i) {
            if (!grid(i, j)) {
                throw InvalidArgument("flatten_imputed: grid has a missing entry at (" + std::to_string(i + 1) +
                                      ", " + std::to_string(j + 1) + ")");
            }
            out.push_back(grid(i, j));
        }
    }
    return TimeSeries(std::move(out));
}

RowSplit split_rows(const MaskedMatrix& grid) {
    if (grid.rows() < 2) {
        throw InvalidArgument("split_rows: need at least 2 rows");
    }
    RowSplit out{grid.row_block(0, grid.rows() - 1), {}};
    out.last.reserve(grid.cols());
    for (std::size_t j = 0; j < grid.cols(); ++j) {
        out.last.push_back(grid(grid.rows() - 1, j));
    }
    return out;
}

}  // namespace tsme
