#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "tsme/series_matrix.hpp"

namespace tsme {
namespace {

const std::vector<double> kNine{1, 2, 3, 4, 5, 6, 7, 8, 9};

void expect_grid(const PageMatrix& p, const std::vector<std::vector<double>>& rows) {
    ASSERT_EQ(p.rows(), rows.size());
    ASSERT_EQ(p.cols(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) EXPECT_EQ(p.at(i + 1, j + 1), rows[i][j]) << i << "," << j;
}

TEST(BuildPageMatrix, FirstShift) {
    const PageMatrix p = build_page_matrix(testing::dense_series(kNine), 3, 1);
    EXPECT_EQ(p.cols(), 2u);
    expect_grid(p, {{1, 4}, {2, 5}, {3, 6}});
}

TEST(BuildPageMatrix, SecondShift) {
    expect_grid(build_page_matrix(testing::dense_series(kNine), 3, 2), {{2, 5}, {3, 6}, {4, 7}});
}

TEST(BuildPageMatrix, PreservesMissing) {
    std::vector<Observation> v(kNine.begin(), kNine.end());
    v[1].reset();
    const PageMatrix p = build_page_matrix(TimeSeries(v), 3, 1);
    EXPECT_FALSE(p.at(2, 1).has_value());
    EXPECT_EQ(p.at(1, 1), 1.0);
    EXPECT_EQ(p.at(2, 2), 5.0);
    EXPECT_EQ(p.grid().observed_count(), 5u);
}

TEST(BuildPageMatrix, RejectsBadArguments) {
    const auto s = testing::dense_series(kNine);
    EXPECT_THROW(build_page_matrix(s, 1, 1), InvalidArgument);
    EXPECT_THROW(build_page_matrix(s, 3, 0), InvalidArgument);
    EXPECT_THROW(build_page_matrix(s, 3, 4), InvalidArgument);
    EXPECT_THROW(build_page_matrix(s, 5, 1), InvalidArgument);  // floor(9/5) - 1 = 0
    EXPECT_NO_THROW(build_page_matrix(s, 4, 4));                 // N = 1, last index 4 + 3 = 7
}

TEST(BuildPageMatrix, CellsMatchIndexFormulaAndAreDisjoint) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t rows = 2 + rng() % 9;
        const std::size_t length = 2 * rows + rng() % 200;
        std::vector<Observation> v(length);
        for (std::size_t i = 0; i < length; ++i) {
            if (rng() % 5) v[i] = static_cast<double>(i + 1);  // value encodes its own index
        }
        const TimeSeries s(v);
        const std::size_t shift = 1 + rng() % rows;
        const PageMatrix p = build_page_matrix(s, rows, shift);
        std::vector<int> seen(length + 1, 0);
        for (std::size_t j = 1; j <= p.cols(); ++j) {
            for (std::size_t i = 1; i <= p.rows(); ++i) {
                const std::size_t idx = i + (j - 1) * rows + (shift - 1);
                ASSERT_LE(idx, length);
                EXPECT_EQ(p.at(i, j), s.at(idx));
                EXPECT_EQ(p.series_index(i, j), idx);
                ++seen[idx];
            }
        }
        for (int c : seen) EXPECT_LE(c, 1);
    }
}

TEST(FlattenImputed, InvertsFirstExample) {
    Eigen::MatrixXd g(3, 2);
    g << 1, 4, 2, 5, 3, 6;
    EXPECT_EQ(flatten_imputed(g, 1), testing::dense_series({1, 2, 3, 4, 5, 6}));
}

TEST(FlattenImputed, SingleCell) {
    Eigen::MatrixXd g(1, 1);
    g << 7;
    EXPECT_EQ(flatten_imputed(g, 1), testing::dense_series({7}));
}

TEST(FlattenImputed, RejectsMissing) {
    MaskedMatrix g(2, 1);
    g(0, 0) = 1.0;
    EXPECT_THROW(flatten_imputed(g, 1), InvalidArgument);
}

TEST(FlattenImputed, RoundTripOnDenseSeries) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n;
    for (std::size_t rows = 2; rows < 9; ++rows) {
        for (std::size_t cols = 1; cols < 6; ++cols) {
            std::vector<double> v(rows * (cols + 1));
            for (auto& x : v) x = n(rng);
            const PageMatrix p = build_page_matrix(testing::dense_series(v), rows, 1);
            ASSERT_EQ(p.cols(), cols);
            const TimeSeries back = flatten_imputed(p.grid(), 1);
            EXPECT_EQ(back, testing::dense_series(std::vector<double>(v.begin(), v.begin() + rows * cols)));
        }
    }
}

TEST(SplitRows, ThreeByTwo) {
    const RowSplit s = split_rows(build_page_matrix(testing::dense_series(kNine), 3, 1));
    ASSERT_EQ(s.top.rows(), 2u);
    EXPECT_EQ(s.top(0, 0), 1.0);
    EXPECT_EQ(s.top(1, 1), 5.0);
    EXPECT_EQ(s.last, (std::vector<Observation>{3.0, 6.0}));
}

TEST(SplitRows, TwoByOneAndPartition) {
    MaskedMatrix g(2, 1);
    g(0, 0) = 1.5;
    const RowSplit s = split_rows(g);
    EXPECT_EQ(s.top.rows(), 1u);
    EXPECT_EQ(s.top(0, 0), 1.5);
    ASSERT_EQ(s.last.size(), 1u);
    EXPECT_FALSE(s.last[0].has_value());

    const PageMatrix p = build_page_matrix(testing::dense_series(kNine), 4, 2);
    const RowSplit ps = split_rows(p);
    for (std::size_t j = 0; j < p.cols(); ++j) {
        for (std::size_t i = 0; i + 1 < p.rows(); ++i) EXPECT_EQ(ps.top(i, j), p.grid()(i, j));
        EXPECT_EQ(ps.last[j], p.grid()(p.rows() - 1, j));
    }
}

TEST(SplitRows, RejectsSingleRow) { EXPECT_THROW(split_rows(MaskedMatrix(1, 3)), InvalidArgument); }

}  // namespace
}  // namespace tsme
