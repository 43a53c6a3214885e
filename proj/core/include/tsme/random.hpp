#pragma once

#include <cstdint>

namespace tsme {

/// Independent random streams derived from one seed.
enum class Channel : std::uint64_t {
    mask = 0x6d61736bULL,
    noise = 0x6e6f6973ULL,
    validation = 0x76616c69ULL,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Portable SplitMix64 stream keyed by (seed, channel, index), so every
/// series position draws from its own reproducible sequence.
class IndexStream {
public:
    IndexStream(std::uint64_t seed, Channel channel, std::uint64_t index) noexcept
        : state_(mix64(mix64(seed ^ static_cast<std::uint64_t>(channel)) + index)) {}

    std::uint64_t next() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    /// Uniform on [0, 1) with 53 bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    double normal() noexcept;

    /// Poisson(lambda) draw; inversion for small lambda, PTRS otherwise.
    std::uint64_t poisson(double lambda);

private:
    std::uint64_t state_;
};

}  // namespace tsme
