#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tsme/time_series.hpp"

namespace tsme {

/// exp(alpha t) cos(2 pi omega t + phi) P(t), P(t) = sum_i poly[i] t^i.
struct LrfTerm {
    double alpha = 0.0;
    double omega = 0.0;
    double phi = 0.0;
    std::vector<double> poly{1.0};
};

/// Bounded Lipschitz maps applied to each inner sinusoid.
enum class Wrapper {
    identity,    ///< x
    cosine,      ///< cos(x)
    exp_square,  ///< exp(x^2) / e, maps [-1, 1] into [1/e, 1]
};

struct Harmonic {
    double omega = 0.0;
    double phi = 0.0;
};

/// amplitude * sum_r wrapper(sin(2 pi omega_r t + phi_r)).
struct HarmonicTerm {
    std::vector<Harmonic> harmonics;
    Wrapper wrapper = Wrapper::identity;
    double amplitude = 1.0;
};

/// power: gamma t^exponent (exponent < 1); log: log(gamma t).
struct TrendTerm {
    enum class Kind { power, log };
    Kind kind = Kind::log;
    double gamma = 1.0;
    double exponent = 0.5;
};

using Component = std::variant<LrfTerm, HarmonicTerm, TrendTerm>;

/// Mixture sum_q weight_q f_q(t). An empty weight list means all ones.
struct GeneratorSpec {
    std::vector<Component> components;
    std::vector<double> weights;

    void validate() const;
    double weight(std::size_t q) const { return weights.empty() ? 1.0 : weights.at(q); }
};

struct NoNoise {};
struct GaussianNoise {
    double sigma = 0.0;
};
/// X(t) = min(Poisson(scale f(t)), cap), then mapped from [0, cap] onto [-1, 1].
struct TruncatedPoisson {
    double cap = 1.0;
    double scale = 1.0;
};
using NoiseSpec = std::variant<NoNoise, GaussianNoise, TruncatedPoisson>;

struct MaskSpec {
    double p = 1.0;
    std::uint64_t seed = 0;
};

/// y = slope x + offset.
struct AffineMap {
    double slope = 1.0;
    double offset = 0.0;
    double operator()(double x) const noexcept { return slope * x + offset; }
};

void validate(const NoiseSpec& noise);
void validate(const MaskSpec& mask);

double evaluate(const Component& c, double t);

/// Deterministic f(t) for t = 1..T.
TimeSeries generate_mean(const GeneratorSpec& spec, std::size_t length);

/// A (m_max + 1)(m_max + 2): bound on the recurrence order of a pure-LRF spec.
std::size_t lrf_order_bound(const GeneratorSpec& spec);

/// Additive Gaussian or truncated-Poisson observation noise. Missing entries stay missing.
TimeSeries apply_noise(const TimeSeries& mean, const NoiseSpec& noise, std::uint64_t seed);

/// Keeps each entry independently with probability p.
TimeSeries apply_mask(const TimeSeries& x, const MaskSpec& mask);

/// Map from raw observation units to the units the observations are reported in.
AffineMap observation_normalization(const NoiseSpec& noise);

/// The series an estimator should recover from apply_noise(mean, noise):
/// the mean itself, or the normalized Poisson rate.
TimeSeries latent_target(const TimeSeries& mean, const NoiseSpec& noise);

std::string to_string(Wrapper w);
Wrapper wrapper_from_string(const std::string& name);

}  // namespace tsme
