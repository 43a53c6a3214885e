#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "tsme/config.hpp"
#include "tsme/csv.hpp"

namespace tsme {
namespace {

CsvTable parse(const std::string& text) {
    std::istringstream in(text);
    return read_csv(in);
}

std::string render(const CsvTable& t) {
    std::ostringstream out;
    write_csv(out, t);
    return out.str();
}

TEST(Csv, RoundTrip) {
    const std::string text = "t,observed\n1,0.5\n2,\n3,-1.25\n";
    const CsvTable t = parse(text);
    EXPECT_EQ(t.header, (std::vector<std::string>{"t", "observed"}));
    ASSERT_EQ(t.rows.size(), 3u);
    EXPECT_EQ(render(t), text);
    const auto obs = t.numeric_column("observed");
    EXPECT_EQ(obs[0], 0.5);
    EXPECT_FALSE(obs[1].has_value());
    EXPECT_THROW(t.numeric_column("mean"), DataError);
}

TEST(Csv, CarriageReturnsAreTolerated) {
    const CsvTable t = parse("a,b\r\n1,2\r\n");
    EXPECT_EQ(t.header[1], "b");
    EXPECT_EQ(t.rows[0][1], "2");
}

TEST(Csv, RealsRoundTripExactly) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 10000; ++i) {
        const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        EXPECT_EQ(*parse_real(format_real(v), 1), v);
    }
    EXPECT_EQ(format_real(0.1), "0.10000000000000001");
    EXPECT_EQ(format_observation(std::nullopt), "");
}

TEST(Csv, NanAndEmptyAreMissing) {
    EXPECT_FALSE(parse_real("", 3).has_value());
    EXPECT_FALSE(parse_real("NaN", 3).has_value());
    EXPECT_FALSE(parse_real("nan", 3).has_value());
    EXPECT_EQ(*parse_real("1e-3", 3), 1e-3);
}

TEST(Csv, ParseErrorsCarryLineNumbers) {
    try {
        parse("t,observed\n1,2\n2,3,4\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    try {
        parse_real("abc", 7);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 7u);
    }
    EXPECT_THROW(parse_real("inf", 1), ParseError);
    EXPECT_THROW(parse(""), ParseError);
}

TEST(Csv, WriterRejectsSeparatorsInFields) {
    EXPECT_THROW(render(CsvTable{{"a"}, {{"1,2"}}}), InvalidArgument);
    EXPECT_THROW(render(CsvTable{{"a", "b"}, {{"1"}}}), InvalidArgument);
}

class SeriesFile : public ::testing::Test {
protected:
    std::filesystem::path path = std::filesystem::temp_directory_path() / "tsme_series_file_test.csv";
    void write(const std::string& text) { std::ofstream(path, std::ios::binary) << text; }
    void TearDown() override { std::filesystem::remove(path); }
};

TEST_F(SeriesFile, ReadsObservedAndMean) {
    write("t,mean,observed\n1,1,1.5\n2,2,\n3,3,NaN\n");
    const SeriesData d = read_series_csv(path);
    EXPECT_EQ(d.observed.size(), 3u);
    EXPECT_EQ(d.observed.observed_count(), 1u);
    ASSERT_TRUE(d.truth.has_value());
    EXPECT_EQ(*d.truth->at(2), 2.0);
}

TEST_F(SeriesFile, ValueColumnAndErrors) {
    write("value\n4\n5\n");
    EXPECT_EQ(read_series_csv(path).observed.dense(), (std::vector<double>{4, 5}));
    write("t,value\n1,4\n3,5\n");
    try {
        read_series_csv(path);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    write("x\n1\n");
    EXPECT_THROW(read_series_csv(path), ParseError);
    EXPECT_THROW(read_series_csv(path.string() + ".missing"), DataError);
}

TEST(Config, ParseAndAccessors) {
    const KeyValueConfig cfg = KeyValueConfig::parse("# comment\n a = 1.5 \n\nlist = 1, 2,3 # trailing\nname=x\n");
    EXPECT_EQ(cfg.get("a"), "1.5");
    EXPECT_EQ(cfg.get_real("a", 0), 1.5);
    EXPECT_EQ(cfg.get_real("missing", 7.0), 7.0);
    EXPECT_EQ(cfg.get_reals("list"), (std::vector<double>{1, 2, 3}));
    EXPECT_EQ(cfg.require("name"), "x");
    EXPECT_THROW(cfg.require("nope"), ConfigError);
    EXPECT_THROW(cfg.get_size("name", 1), ConfigError);
    EXPECT_EQ(KeyValueConfig::parse(cfg.serialize()).entries(), cfg.entries());
}

TEST(Config, ParseErrors) {
    EXPECT_THROW(KeyValueConfig::parse("novalue\n"), ConfigError);
    EXPECT_THROW(KeyValueConfig::parse(" = 3\n"), ConfigError);
    EXPECT_THROW(KeyValueConfig::parse("a = 1\na = 2\n"), ConfigError);
    EXPECT_THROW(parse_config_real("k", "1.5x"), ConfigError);
    EXPECT_THROW(parse_config_u64("k", "-3"), ConfigError);
}

TEST(Config, GeneratorRoundTrip) {
    const GeneratorSpec spec{{LrfTerm{-0.01, 0.1, 0.3, {1.0, 0.5}},
                              HarmonicTerm{{{0.01, 0.0}, {0.03, 1.0}}, Wrapper::exp_square, 2.0},
                              TrendTerm{TrendTerm::Kind::power, 0.3, 0.25}, TrendTerm{TrendTerm::Kind::log, 2.0, 0.5}},
                             {1.0, 0.5, 0.25, -1.0}};
    KeyValueConfig cfg;
    generator_to_config(spec, cfg);
    const GeneratorSpec back = generator_from_config(KeyValueConfig::parse(cfg.serialize()));
    KeyValueConfig again;
    generator_to_config(back, again);
    EXPECT_EQ(again.serialize(), cfg.serialize());
    EXPECT_EQ(back.weights, spec.weights);

    for (const NoiseSpec& n : {NoiseSpec{NoNoise{}}, NoiseSpec{GaussianNoise{0.3}}, NoiseSpec{TruncatedPoisson{50, 2}}}) {
        KeyValueConfig c;
        noise_to_config(n, c);
        KeyValueConfig d;
        noise_to_config(noise_from_config(c), d);
        EXPECT_EQ(c.serialize(), d.serialize());
    }
}

TEST(Config, GeneratorErrors) {
    EXPECT_THROW(generator_from_config(KeyValueConfig::parse("component.0.kind = spline\n")), ConfigError);
    EXPECT_THROW(generator_from_config(KeyValueConfig::parse(
                     "component.0.kind = harmonic\ncomponent.0.omega = 0.1, 0.2\ncomponent.0.phi = 0\n")),
                 ConfigError);
    EXPECT_THROW(generator_from_config(KeyValueConfig::parse("component.0.kind = power_trend\ncomponent.0.exponent = 2\n")),
                 ConfigError);
    EXPECT_THROW(noise_from_config(KeyValueConfig::parse("noise = laplace\n")), ConfigError);
    EXPECT_THROW(noise_from_config(KeyValueConfig::parse("noise = gaussian\nnoise.sigma = -1\n")), ConfigError);
}

TEST(ExperimentConfig, ParsesFullConfig) {
    const KeyValueConfig cfg = KeyValueConfig::parse(
        "task = forecast\nT = 500\ncomponent.0.kind = lrf\ncomponent.0.omega = 0.1\n"
        "noise = gaussian\nnoise.sigma = 0.2\np = 0.7\nL = auto\nmu = cv\ncv.mu = 0.5, 1\ncv.L = 5, 10\n"
        "seeds = 3, 4\noutput = out.csv\n");
    const ExperimentConfig e = experiment_from_config(cfg, "/base");
    EXPECT_EQ(e.task, Task::forecast);
    EXPECT_TRUE(e.synthetic());
    EXPECT_EQ(e.length, 500u);
    EXPECT_EQ(e.p, 0.7);
    EXPECT_TRUE(std::holds_alternative<RowsAuto>(e.rows));
    EXPECT_TRUE(std::holds_alternative<MuFromCv>(e.mu));
    EXPECT_EQ(e.cv_mu, (std::vector<double>{0.5, 1.0}));
    EXPECT_EQ(e.cv_rows, (std::vector<std::size_t>{5, 10}));
    EXPECT_EQ(e.seeds, (std::vector<std::uint64_t>{3, 4}));
}

TEST(ExperimentConfig, Errors) {
    const std::string gen = "T = 100\ncomponent.0.kind = lrf\n";
    auto load = [](const std::string& text) { return experiment_from_config(KeyValueConfig::parse(text), "."); };
    EXPECT_NO_THROW(load(gen));
    EXPECT_THROW(load("T = 100\n"), ConfigError);
    EXPECT_THROW(load(gen + "file = x.csv\n"), ConfigError);
    EXPECT_THROW(load(gen + "p = 0\n"), ConfigError);
    EXPECT_THROW(load(gen + "L = 1\n"), ConfigError);
    EXPECT_THROW(load(gen + "mu = -2\n"), ConfigError);
    EXPECT_THROW(load(gen + "task = hidden_state\n"), ConfigError);
    EXPECT_THROW(load(gen + "task = smooth\n"), ConfigError);
    EXPECT_THROW(load(gen + "seeds = \n"), ConfigError);
}

TEST(ExperimentConfig, ShippedConfigsLoad) {
    std::size_t seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(TSME_CONFIG_DIR)) {
        if (entry.path().extension() != ".cfg") continue;
        ++seen;
        EXPECT_NO_THROW(experiment_from_config(KeyValueConfig::load(entry.path()), entry.path().parent_path()))
            << entry.path();
    }
    EXPECT_GT(seen, 0u);
}

}  // namespace
}  // namespace tsme
