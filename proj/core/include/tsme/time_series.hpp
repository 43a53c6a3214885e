#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tsme/errors.hpp"

namespace tsme {

using Observation = std::optional<double>;

/// A univariate series of optionally-observed reals. Public indexing is
/// 1-based (t = 1..T); `values()` exposes the 0-based storage.
class TimeSeries {
public:
    TimeSeries() = default;

    explicit TimeSeries(std::vector<Observation> values) : values_(std::move(values)) {
        for (const auto& v : values_) {
            if (v && !std::isfinite(*v)) {
                throw InvalidArgument("TimeSeries: observed values must be finite");
            }
        }
    }

    static TimeSeries from_dense(std::span<const double> values) {
        std::vector<Observation> out(values.begin(), values.end());
        return TimeSeries(std::move(out));
    }

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    /// 1-based access.
    const Observation& at(std::size_t t) const {
        if (t == 0 || t > values_.size()) {
            throw InvalidArgument("TimeSeries: index " + std::to_string(t) + " outside [1, " +
                                  std::to_string(values_.size()) + "]");
        }
        return values_[t - 1];
    }

    bool observed(std::size_t t) const { return at(t).has_value(); }

    std::span<const Observation> values() const noexcept { return values_; }

    std::size_t observed_count() const noexcept {
        std::size_t n = 0;
        for (const auto& v : values_) n += v.has_value();
        return n;
    }

    bool is_dense() const noexcept { return observed_count() == values_.size(); }

    /// Dense copy; throws if any entry is missing.
    std::vector<double> dense() const {
        std::vector<double> out;
        out.reserve(values_.size());
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!values_[i]) {
                throw InvalidArgument("TimeSeries: entry " + std::to_string(i + 1) + " is missing");
            }
            out.push_back(*values_[i]);
        }
        return out;
    }

    /// Entries [first, last], 1-based inclusive.
    TimeSeries slice(std::size_t first, std::size_t last) const {
        if (first == 0 || first > last || last > values_.size()) {
            throw InvalidArgument("TimeSeries: bad slice");
        }
        return TimeSeries(std::vector<Observation>(values_.begin() + static_cast<std::ptrdiff_t>(first - 1),
                                                   values_.begin() + static_cast<std::ptrdiff_t>(last)));
    }

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::vector<Observation> values_;
};

}  // namespace tsme
