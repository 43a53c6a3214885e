#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsme {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter violates an operation's precondition
/// (L < 2, shift out of range, series too short, shape mismatch, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed or unusable input data.
class DataError : public Error {
public:
    using Error::Error;
};

/// CSV ingestion failure. `line()` is 1-based and counts the header.
class ParseError : public DataError {
public:
    ParseError(std::size_t line, const std::string& what)
        : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Bad experiment configuration or command-line usage.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A numerical kernel (SVD) failed to converge or produced non-finite output.
class NumericalError : public Error {
public:
    NumericalError(std::size_t rows, std::size_t cols, const std::string& what)
        : Error(what + " (" + std::to_string(rows) + "x" + std::to_string(cols) + ")"),
          rows_(rows), cols_(cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

private:
    std::size_t rows_;
    std::size_t cols_;
};

}  // namespace tsme
