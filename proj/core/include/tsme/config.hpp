#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tsme/cross_validation.hpp"
#include "tsme/generators.hpp"

namespace tsme {

/// Flat `key = value` text, one pair per line, `#` starts a comment.
class KeyValueConfig {
public:
    static KeyValueConfig parse(const std::string& text);
    static KeyValueConfig load(const std::filesystem::path& path);

    bool contains(const std::string& key) const { return values_.count(key) != 0; }
    std::optional<std::string> get(const std::string& key) const;
    void set(const std::string& key, const std::string& value);

    std::string require(const std::string& key) const;
    double get_real(const std::string& key, double fallback) const;
    std::size_t get_size(const std::string& key, std::size_t fallback) const;
    std::vector<double> get_reals(const std::string& key) const;

    /// Sorted by key.
    std::string serialize() const;

    const std::map<std::string, std::string>& entries() const noexcept { return values_; }

private:
    std::map<std::string, std::string> values_;
};

double parse_config_real(const std::string& key, const std::string& text);
std::uint64_t parse_config_u64(const std::string& key, const std::string& text);
std::vector<std::string> split_list(const std::string& text);

/// component.<i>.kind = lrf | harmonic | power_trend | log_trend, plus the
/// per-kind fields (alpha, omega, phi, poly, wrapper, amplitude, gamma,
/// exponent) and component.<i>.weight.
GeneratorSpec generator_from_config(const KeyValueConfig& cfg);
void generator_to_config(const GeneratorSpec& spec, KeyValueConfig& cfg);

/// noise = none | gaussian | poisson_truncated with noise.sigma / noise.cap / noise.scale.
NoiseSpec noise_from_config(const KeyValueConfig& cfg);
void noise_to_config(const NoiseSpec& noise, KeyValueConfig& cfg);

enum class Task { impute, forecast, hidden_state };

std::string to_string(Task t);

struct MuFromCv {};
using MuChoice = std::variant<double, MuFromCv>;
struct RowsAuto {};
using RowsChoice = std::variant<std::size_t, RowsAuto>;

struct ExperimentConfig {
    Task task = Task::impute;
    std::variant<std::filesystem::path, GeneratorSpec> source;
    std::size_t length = 0;  ///< T for generator sources
    double p = 1.0;
    NoiseSpec noise = NoNoise{};
    RowsChoice rows = RowsAuto{};
    MuChoice mu = MuFromCv{};
    std::vector<double> cv_mu;         ///< empty: default grid
    std::vector<std::size_t> cv_rows;  ///< empty: default grid
    std::vector<std::uint64_t> seeds{1};
    std::filesystem::path output;

    bool synthetic() const noexcept { return std::holds_alternative<GeneratorSpec>(source); }
    void validate() const;
};

/// Relative `file` paths resolve against `base_dir`.
ExperimentConfig experiment_from_config(const KeyValueConfig& cfg, const std::filesystem::path& base_dir = {});

}  // namespace tsme
