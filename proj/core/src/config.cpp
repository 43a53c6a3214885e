#include "tsme/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tsme/csv.hpp"

namespace tsme {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string join_reals(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_real(values[i]);
    }
    return out;
}

std::string component_key(std::size_t i, const char* field) {
    return "component." + std::to_string(i) + "." + field;
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_config_real(const std::string& key, const std::string& text) {
    double v = 0.0;
    const std::string s = trim(text);
    const char* first = s.data();
    if (!s.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ConfigError("config key '" + key + "': expected a real number, got '" + text + "'");
    }
    return v;
}

std::uint64_t parse_config_u64(const std::string& key, const std::string& text) {
    std::uint64_t v = 0;
    const std::string s = trim(text);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ConfigError("config key '" + key + "': expected a nonnegative integer, got '" + text + "'");
    }
    return v;
}

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        }
        if (cfg.contains(key)) {
            throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
        cfg.values_[key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read config '" + path.string() + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) { values_[key] = value; }

std::string KeyValueConfig::require(const std::string& key) const {
    auto v = get(key);
    if (!v) {
        throw ConfigError("config key '" + key + "' is required");
    }
    return *v;
}

double KeyValueConfig::get_real(const std::string& key, double fallback) const {
    const auto v = get(key);
    return v ? parse_config_real(key, *v) : fallback;
}

std::size_t KeyValueConfig::get_size(const std::string& key, std::size_t fallback) const {
    const auto v = get(key);
    return v ? static_cast<std::size_t>(parse_config_u64(key, *v)) : fallback;
}

std::vector<double> KeyValueConfig::get_reals(const std::string& key) const {
    std::vector<double> out;
    if (const auto v = get(key)) {
        for (const auto& item : split_list(*v)) out.push_back(parse_config_real(key, item));
    }
    return out;
}

std::string KeyValueConfig::serialize() const {
    std::string out;
    for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
    return out;
}

GeneratorSpec generator_from_config(const KeyValueConfig& cfg) {
    GeneratorSpec spec;
    bool any_weight = false;
    for (std::size_t i = 0; cfg.contains(component_key(i, "kind")); ++i) {
        const std::string kind = cfg.require(component_key(i, "kind"));
        if (kind == "lrf") {
            LrfTerm l;
            l.alpha = cfg.get_real(component_key(i, "alpha"), 0.0);
            l.omega = cfg.get_real(component_key(i, "omega"), 0.0);
            l.phi = cfg.get_real(component_key(i, "phi"), 0.0);
            if (cfg.contains(component_key(i, "poly"))) l.poly = cfg.get_reals(component_key(i, "poly"));
            spec.components.emplace_back(std::move(l));
        } else if (kind == "harmonic") {
            HarmonicTerm h;
            const auto omegas = cfg.get_reals(component_key(i, "omega"));
            auto phis = cfg.get_reals(component_key(i, "phi"));
            if (phis.empty()) phis.assign(omegas.size(), 0.0);
            if (phis.size() != omegas.size()) {
                throw ConfigError(component_key(i, "phi") + ": needs one phase per frequency");
            }
            for (std::size_t r = 0; r < omegas.size(); ++r) h.harmonics.push_back({omegas[r], phis[r]});
            if (const auto w = cfg.get(component_key(i, "wrapper"))) {
                try {
                    h.wrapper = wrapper_from_string(*w);
                } catch (const InvalidArgument& e) {
                    throw ConfigError(e.what());
                }
            }
            h.amplitude = cfg.get_real(component_key(i, "amplitude"), 1.0);
            spec.components.emplace_back(std::move(h));
        } else if (kind == "power_trend" || kind == "log_trend") {
            TrendTerm tr;
            tr.kind = kind == "power_trend" ? TrendTerm::Kind::power : TrendTerm::Kind::log;
            tr.gamma = cfg.get_real(component_key(i, "gamma"), 1.0);
            tr.exponent = cfg.get_real(component_key(i, "exponent"), 0.5);
            spec.components.emplace_back(tr);
        } else {
            throw ConfigError(component_key(i, "kind") + ": unknown kind '" + kind + "'");
        }
        any_weight = any_weight || cfg.contains(component_key(i, "weight"));
        spec.weights.push_back(cfg.get_real(component_key(i, "weight"), 1.0));
    }
    if (!any_weight) spec.weights.clear();
    try {
        spec.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    return spec;
}

void generator_to_config(const GeneratorSpec& spec, KeyValueConfig& cfg) {
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
        const auto& c = spec.components[i];
        if (const auto* l = std::get_if<LrfTerm>(&c)) {
            cfg.set(component_key(i, "kind"), "lrf");
            cfg.set(component_key(i, "alpha"), format_real(l->alpha));
            cfg.set(component_key(i, "omega"), format_real(l->omega));
            cfg.set(component_key(i, "phi"), format_real(l->phi));
            cfg.set(component_key(i, "poly"), join_reals(l->poly));
        } else if (const auto* h = std::get_if<HarmonicTerm>(&c)) {
            std::vector<double> omegas;
            std::vector<double> phis;
            for (const auto& hr : h->harmonics) {
                omegas.push_back(hr.omega);
                phis.push_back(hr.phi);
            }
            cfg.set(component_key(i, "kind"), "harmonic");
            cfg.set(component_key(i, "omega"), join_reals(omegas));
            cfg.set(component_key(i, "phi"), join_reals(phis));
            cfg.set(component_key(i, "wrapper"), to_string(h->wrapper));
            cfg.set(component_key(i, "amplitude"), format_real(h->amplitude));
        } else {
            const auto& tr = std::get<TrendTerm>(c);
            cfg.set(component_key(i, "kind"), tr.kind == TrendTerm::Kind::power ? "power_trend" : "log_trend");
            cfg.set(component_key(i, "gamma"), format_real(tr.gamma));
            if (tr.kind == TrendTerm::Kind::power) cfg.set(component_key(i, "exponent"), format_real(tr.exponent));
        }
        if (!spec.weights.empty()) cfg.set(component_key(i, "weight"), format_real(spec.weights[i]));
    }
}

NoiseSpec noise_from_config(const KeyValueConfig& cfg) {
    const std::string kind = cfg.get("noise").value_or("none");
    NoiseSpec noise;
    if (kind == "none") {
        noise = NoNoise{};
    } else if (kind == "gaussian") {
        noise = GaussianNoise{cfg.get_real("noise.sigma", 0.0)};
    } else if (kind == "poisson_truncated") {
        noise = TruncatedPoisson{cfg.get_real("noise.cap", 1.0), cfg.get_real("noise.scale", 1.0)};
    } else {
        throw ConfigError("noise: unknown kind '" + kind + "' (expected none, gaussian, poisson_truncated)");
    }
    try {
        validate(noise);
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    return noise;
}

void noise_to_config(const NoiseSpec& noise, KeyValueConfig& cfg) {
    if (const auto* g = std::get_if<GaussianNoise>(&noise)) {
        cfg.set("noise", "gaussian");
        cfg.set("noise.sigma", format_real(g->sigma));
    } else if (const auto* tp = std::get_if<TruncatedPoisson>(&noise)) {
        cfg.set("noise", "poisson_truncated");
        cfg.set("noise.cap", format_real(tp->cap));
        cfg.set("noise.scale", format_real(tp->scale));
    } else {
        cfg.set("noise", "none");
    }
}

std::string to_string(Task t) {
    switch (t) {
        case Task::impute: return "impute";
        case Task::forecast: return "forecast";
        case Task::hidden_state: return "hidden_state";
    }
    return "impute";
}

void ExperimentConfig::validate() const {
    if (seeds.empty()) {
        throw ConfigError("config: at least one seed is required");
    }
    if (!(p > 0.0 && p <= 1.0)) {
        throw ConfigError("config: p must lie in (0, 1]");
    }
    if (synthetic() && length < 1) {
        throw ConfigError("config: generator sources need T >= 1");
    }
    if (const auto* r = std::get_if<std::size_t>(&rows); r && *r < 2) {
        throw ConfigError("config: L must be >= 2");
    }
    if (const auto* m = std::get_if<double>(&mu); m && !(*m >= 0.0)) {
        throw ConfigError("config: mu must be >= 0");
    }
    if (task == Task::hidden_state && !std::holds_alternative<TruncatedPoisson>(noise)) {
        throw ConfigError("config: task hidden_state needs noise = poisson_truncated");
    }
}

ExperimentConfig experiment_from_config(const KeyValueConfig& cfg, const std::filesystem::path& base_dir) {
    ExperimentConfig exp;
    const std::string task = cfg.get("task").value_or("impute");
    if (task == "impute") {
        exp.task = Task::impute;
    } else if (task == "forecast") {
        exp.task = Task::forecast;
    } else if (task == "hidden_state") {
        exp.task = Task::hidden_state;
    } else {
        throw ConfigError("task: unknown value '" + task + "'");
    }

    const bool has_file = cfg.contains("file");
    const bool has_generator = cfg.contains("component.0.kind");
    if (has_file == has_generator) {
        throw ConfigError("config needs exactly one source: either 'file' or 'component.0.kind'");
    }
    if (has_file) {
        std::filesystem::path file = cfg.require("file");
        if (file.is_relative() && !base_dir.empty()) file = base_dir / file;
        exp.source = file;
    } else {
        exp.source = generator_from_config(cfg);
        exp.length = cfg.get_size("T", 0);
    }

    exp.p = cfg.get_real("p", 1.0);
    exp.noise = noise_from_config(cfg);

    if (const auto l = cfg.get("L"); l && *l != "auto") {
        exp.rows = static_cast<std::size_t>(parse_config_u64("L", *l));
    }
    if (const auto m = cfg.get("mu"); m && *m != "cv") {
        exp.mu = parse_config_real("mu", *m);
    }
    exp.cv_mu = cfg.get_reals("cv.mu");
    if (const auto v = cfg.get("cv.L")) {
        for (const auto& item : split_list(*v)) {
            exp.cv_rows.push_back(static_cast<std::size_t>(parse_config_u64("cv.L", item)));
        }
    }
    if (const auto s = cfg.get("seeds")) {
        exp.seeds.clear();
        for (const auto& item : split_list(*s)) exp.seeds.push_back(parse_config_u64("seeds", item));
    }
    if (const auto o = cfg.get("output")) exp.output = *o;
    exp.validate();
    return exp;
}

}  // namespace tsme
