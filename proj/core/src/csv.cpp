#include "tsme/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tsme {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace

std::optional<std::size_t> CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    return std::nullopt;
}

std::vector<Observation> CsvTable::numeric_column(const std::string& name) const {
    const auto idx = column(name);
    if (!idx) {
        throw DataError("CSV has no column '" + name + "'");
    }
    std::vector<Observation> out;
    out.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out.push_back(parse_real(rows[r][*idx], r + 2));
    }
    return out;
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!have_header) {
            if (line.empty()) {
                throw ParseError(line_no, "missing header row");
            }
            table.header = split_line(line);
            have_header = true;
            continue;
        }
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
        auto fields = split_line(line);
        if (fields.size() != table.header.size()) {
            throw ParseError(line_no, "expected " + std::to_string(table.header.size()) + " fields, found " +
                                          std::to_string(fields.size()));
        }
        table.rows.push_back(std::move(fields));
    }
    if (!have_header) {
        throw ParseError(1, "missing header row");
    }
    return table;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open '" + path.string() + "' for reading");
    }
    return read_csv(in);
}

void write_csv(std::ostream& out, const CsvTable& table) {
    auto emit = [&out](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (fields[i].find_first_of(",\n\r") != std::string::npos) {
                throw InvalidArgument("CSV field contains a separator: '" + fields[i] + "'");
            }
            if (i) out << ',';
            out << fields[i];
        }
        out << '\n';
    };
    emit(table.header);
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw InvalidArgument("CSV row width does not match header");
        }
        emit(row);
    }
}

void write_csv_file(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw DataError("cannot open '" + path.string() + "' for writing");
    }
    write_csv(out, table);
    out.flush();
    if (!out) {
        throw DataError("failed writing '" + path.string() + "'");
    }
}

std::string format_real(double v) {
    char buf[40];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

std::string format_observation(const Observation& v) { return v ? format_real(*v) : std::string(); }

Observation parse_real(const std::string& cell, std::size_t line) {
    if (cell.empty()) return std::nullopt;
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw ParseError(line, "not a number: '" + cell + "'");
    }
    if (std::isnan(v)) return std::nullopt;
    if (!std::isfinite(v)) {
        throw ParseError(line, "non-finite value: '" + cell + "'");
    }
    return v;
}

SeriesData read_series_csv(const std::filesystem::path& path) {
    const CsvTable table = read_csv_file(path);
    const char* value_col = table.column("observed") ? "observed" : "value";
    if (!table.column(value_col)) {
        throw ParseError(1, "series CSV needs an 'observed' or 'value' column");
    }
    if (table.rows.empty()) {
        throw ParseError(2, "series CSV has no data rows");
    }
    if (const auto t_col = table.column("t")) {
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            const auto t = parse_real(table.rows[r][*t_col], r + 2);
            if (!t || *t != static_cast<double>(r + 1)) {
                throw ParseError(r + 2, "column 't' must count 1, 2, ...");
            }
        }
    }
    SeriesData data{TimeSeries(table.numeric_column(value_col)), std::nullopt};
    if (table.column("mean")) {
        TimeSeries truth(table.numeric_column("mean"));
        if (truth.is_dense()) data.truth = std::move(truth);
    }
    return data;
}

}  // namespace tsme
