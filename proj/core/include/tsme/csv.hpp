#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tsme/time_series.hpp"

namespace tsme {

/// Header plus rows of raw string cells. Wire format: UTF-8, ',' separator,
/// '\n' line endings, header row required, no quoting.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::optional<std::size_t> column(const std::string& name) const;
    /// Reals of one column; empty cells and NaN become missing.
    std::vector<Observation> numeric_column(const std::string& name) const;

    friend bool operator==(const CsvTable&, const CsvTable&) = default;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::filesystem::path& path);
void write_csv(std::ostream& out, const CsvTable& table);
void write_csv_file(const std::filesystem::path& path, const CsvTable& table);

/// 17 significant digits; always round-trips through parse_real.
std::string format_real(double v);
std::string format_observation(const Observation& v);
/// Empty or NaN -> missing; infinities and junk raise ParseError.
Observation parse_real(const std::string& cell, std::size_t line);

struct SeriesData {
    TimeSeries observed;
    std::optional<TimeSeries> truth;  ///< the `mean` column, when present
};

/// Reads a series file: column `observed` (or `value`), optional `mean`,
/// optional `t` which must count 1, 2, ... .
SeriesData read_series_csv(const std::filesystem::path& path);

}  // namespace tsme
