#include "tsme/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tsme/random.hpp"

namespace tsme {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw InvalidArgument(std::string("GeneratorSpec: ") + what + " must be finite");
    }
}

double apply_wrapper(Wrapper w, double x) {
    switch (w) {
        case Wrapper::identity: return x;
        case Wrapper::cosine: return std::cos(x);
        case Wrapper::exp_square: return std::exp(x * x - 1.0);
    }
    return x;
}

}  // namespace

void GeneratorSpec::validate() const {
    if (components.empty()) {
        throw InvalidArgument("GeneratorSpec: at least one component is required");
    }
    if (!weights.empty() && weights.size() != components.size()) {
        throw InvalidArgument("GeneratorSpec: weight count must match component count");
    }
    for (double w : weights) require_finite(w, "mixture weight");
    for (const auto& c : components) {
        std::visit(overloaded{
                       [](const LrfTerm& l) {
                           require_finite(l.alpha, "lrf alpha");
                           require_finite(l.omega, "lrf omega");
                           require_finite(l.phi, "lrf phi");
                           if (l.poly.empty()) throw InvalidArgument("GeneratorSpec: lrf polynomial is empty");
                           for (double c : l.poly) require_finite(c, "lrf polynomial coefficient");
                       },
                       [](const HarmonicTerm& h) {
                           if (h.harmonics.empty()) {
                               throw InvalidArgument("GeneratorSpec: harmonic term needs at least one frequency");
                           }
                           require_finite(h.amplitude, "harmonic amplitude");
                           for (const auto& hr : h.harmonics) {
                               require_finite(hr.omega, "harmonic omega");
                               require_finite(hr.phi, "harmonic phi");
                           }
                       },
                       [](const TrendTerm& tr) {
                           require_finite(tr.gamma, "trend gamma");
                           if (tr.kind == TrendTerm::Kind::power) {
                               require_finite(tr.exponent, "trend exponent");
                               if (!(tr.exponent < 1.0)) {
                                   throw InvalidArgument("GeneratorSpec: power trend exponent must be < 1");
                               }
                           } else if (!(tr.gamma > 0.0)) {
                               throw InvalidArgument("GeneratorSpec: log trend needs gamma > 0");
                           }
                       },
                   },
                   c);
    }
}

double evaluate(const Component& c, double t) {
    return std::visit(overloaded{
                          [t](const LrfTerm& l) {
                              double poly = 0.0;
                              for (auto it = l.poly.rbegin(); it != l.poly.rend(); ++it) poly = poly * t + *it;
                              return std::exp(l.alpha * t) * std::cos(2.0 * std::numbers::pi * l.omega * t + l.phi) *
                                     poly;
                          },
                          [t](const HarmonicTerm& h) {
                              double sum = 0.0;
                              for (const auto& hr : h.harmonics) {
                                  sum += apply_wrapper(h.wrapper,
                                                       std::sin(2.0 * std::numbers::pi * hr.omega * t + hr.phi));
                              }
                              return h.amplitude * sum;
                          },
                          [t](const TrendTerm& tr) {
                              return tr.kind == TrendTerm::Kind::power ? tr.gamma * std::pow(t, tr.exponent)
                                                                       : std::log(tr.gamma * t);
                          },
                      },
                      c);
}

TimeSeries generate_mean(const GeneratorSpec& spec, std::size_t length) {
    spec.validate();
    if (length < 1) {
        throw InvalidArgument("generate_mean: length must be >= 1");
    }
    std::vector<Observation> out(length);
    for (std::size_t i = 0; i < length; ++i) {
        const double t = static_cast<double>(i + 1);
        double v = 0.0;
        for (std::size_t q = 0; q < spec.components.size(); ++q) {
            v += spec.weight(q) * evaluate(spec.components[q], t);
        }
        out[i] = v;
    }
    return TimeSeries(std::move(out));
}

std::size_t lrf_order_bound(const GeneratorSpec& spec) {
    spec.validate();
    std::size_t m_max = 0;
    for (const auto& c : spec.components) {
        const auto* l = std::get_if<LrfTerm>(&c);
        if (l == nullptr) {
            throw InvalidArgument("lrf_order_bound: spec contains a non-LRF component");
        }
        m_max = std::max(m_max, l->poly.size() - 1);
    }
    return spec.components.size() * (m_max + 1) * (m_max + 2);
}

void validate(const NoiseSpec& noise) {
    std::visit(overloaded{
                   [](const NoNoise&) {},
                   [](const GaussianNoise& g) {
                       if (!(g.sigma >= 0.0) || !std::isfinite(g.sigma)) {
                           throw InvalidArgument("NoiseSpec: sigma must be finite and >= 0");
                       }
                   },
                   [](const TruncatedPoisson& tp) {
                       if (!(tp.cap > 0.0) || !std::isfinite(tp.cap)) {
                           throw InvalidArgument("NoiseSpec: Poisson cap must be > 0");
                       }
                       if (!(tp.scale > 0.0) || !std::isfinite(tp.scale)) {
                           throw InvalidArgument("NoiseSpec: Poisson scale must be > 0");
                       }
                   },
               },
               noise);
}

void validate(const MaskSpec& mask) {
    if (!(mask.p > 0.0 && mask.p <= 1.0)) {
        throw InvalidArgument("MaskSpec: p must lie in (0, 1]");
    }
}

AffineMap observation_normalization(const NoiseSpec& noise) {
    if (const auto* tp = std::get_if<TruncatedPoisson>(&noise)) {
        return AffineMap{2.0 / tp->cap, -1.0};
    }
    return AffineMap{};
}

TimeSeries apply_noise(const TimeSeries& mean, const NoiseSpec& noise, std::uint64_t seed) {
    validate(noise);
    const auto values = mean.values();
    std::vector<Observation> out(values.begin(), values.end());
    std::visit(overloaded{
                   [](const NoNoise&) {},
                   [&](const GaussianNoise& g) {
                       if (g.sigma == 0.0) return;
                       for (std::size_t i = 0; i < out.size(); ++i) {
                           if (!out[i]) continue;
                           IndexStream rng(seed, Channel::noise, i + 1);
                           *out[i] += g.sigma * rng.normal();
                       }
                   },
                   [&](const TruncatedPoisson& tp) {
                       const AffineMap norm = observation_normalization(noise);
                       for (std::size_t i = 0; i < out.size(); ++i) {
                           if (!out[i]) continue;
                           const double rate = tp.scale * *out[i];
                           if (!(rate >= 0.0)) {
                               throw InvalidArgument("apply_noise: negative Poisson rate at t=" +
                                                     std::to_string(i + 1));
                           }
                           IndexStream rng(seed, Channel::noise, i + 1);
                           const double draw = std::min(static_cast<double>(rng.poisson(rate)), tp.cap);
                           out[i] = norm(draw);
                       }
                   },
               },
               noise);
    return TimeSeries(std::move(out));
}

TimeSeries apply_mask(const TimeSeries& x, const MaskSpec& mask) {
    validate(mask);
    const auto values = x.values();
    std::vector<Observation> out(values.begin(), values.end());
    if (mask.p == 1.0) return TimeSeries(std::move(out));
    for (std::size_t i = 0; i < out.size(); ++i) {
        IndexStream rng(mask.seed, Channel::mask, i + 1);
        if (!(rng.uniform() < mask.p)) out[i].reset();
    }
    return TimeSeries(std::move(out));
}

TimeSeries latent_target(const TimeSeries& mean, const NoiseSpec& noise) {
    const auto* tp = std::get_if<TruncatedPoisson>(&noise);
    if (tp == nullptr) return mean;
    const AffineMap norm = observation_normalization(noise);
    const auto values = mean.values();
    std::vector<Observation> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i]) out[i] = norm(tp->scale * *values[i]);
    }
    return TimeSeries(std::move(out));
}

std::string to_string(Wrapper w) {
    switch (w) {
        case Wrapper::identity: return "identity";
        case Wrapper::cosine: return "cos";
        case Wrapper::exp_square: return "exp_square";
    }
    return "identity";
}

Wrapper wrapper_from_string(const std::string& name) {
    if (name == "identity") return Wrapper::identity;
    if (name == "cos") return Wrapper::cosine;
    if (name == "exp_square") return Wrapper::exp_square;
    throw InvalidArgument("unknown harmonic wrapper '" + name + "' (expected identity, cos, exp_square)");
}

}  // namespace tsme
