// Drives the tsme executable end to end. argv[1] is the binary.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tsme/csv.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_binary;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    fs::path dir;

    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir = fs::temp_directory_path() / (std::string("tsme_cli_") + info->name());
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    fs::path write_config(const std::string& name, const std::string& text) {
        const fs::path p = dir / name;
        std::ofstream(p, std::ios::binary) << text;
        return p;
    }

    // Exit status of `tsme <args>`; stderr lands in dir/stderr.txt.
    int run(const std::string& args) {
        const std::string cmd = "\"" + g_binary + "\" " + args + " > \"" + (dir / "stdout.txt").string() + "\" 2> \"" +
                                (dir / "stderr.txt").string() + "\"";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string stderr_text() const { return slurp(dir / "stderr.txt"); }

    tsme::CsvTable table(const std::string& name) const { return tsme::read_csv_file(dir / name); }

    // rmse of the report row with this method and subset.
    double report_rmse(const std::string& file, const std::string& method, const std::string& subset) const {
        const tsme::CsvTable t = table(file);
        for (const auto& row : t.rows)
            if (row[1] == method && row[2] == subset) return *tsme::parse_real(row[5], 0);
        ADD_FAILURE() << "no row " << method << "/" << subset << " in " << file;
        return NAN;
    }
};

const char* kConstant =
    "T = 10\ncomponent.0.kind = lrf\ncomponent.0.poly = 2.5\n";

TEST_F(Cli, GenerateHeaderAndRows) {
    const fs::path cfg = write_config("c.cfg", std::string(kConstant) + "output = " + (dir / "g.csv").string() + "\n");
    ASSERT_EQ(run("generate --config " + cfg.string()), 0) << stderr_text();
    const std::string text = slurp(dir / "g.csv");
    EXPECT_EQ(text.substr(0, text.find('\n')), "t,mean,observed");
    const tsme::CsvTable t = table("g.csv");
    ASSERT_EQ(t.rows.size(), 10u);
    for (std::size_t i = 0; i < 10; ++i) {
        EXPECT_EQ(t.rows[i][0], std::to_string(i + 1));
        EXPECT_EQ(t.rows[i][1], t.rows[i][2]);
        EXPECT_EQ(t.rows[i][1], "2.5");
    }
}

TEST_F(Cli, OutputsRoundTripThroughParser) {
    const fs::path cfg = write_config(
        "c.cfg",
        "T = 300\ncomponent.0.kind = harmonic\ncomponent.0.omega = 0.05\nnoise = gaussian\nnoise.sigma = 0.3\n"
        "p = 0.6\nL = 6\nmu = cv\ncv.mu = 0.5, 1.5\n");
    for (const std::string cmd : {"generate", "impute", "forecast", "cv", "eval"}) {
        const fs::path out = dir / (cmd + ".csv");
        ASSERT_EQ(run(cmd + " --config " + cfg.string() + " --output " + out.string()), 0) << cmd << stderr_text();
        std::ostringstream again;
        tsme::write_csv(again, tsme::read_csv_file(out));
        EXPECT_EQ(again.str(), slurp(out)) << cmd;
    }
}

TEST_F(Cli, RerunsAreByteIdentical) {
    const fs::path cfg = write_config(
        "c.cfg",
        "T = 400\ncomponent.0.kind = harmonic\ncomponent.0.omega = 0.03, 0.011\ncomponent.1.kind = log_trend\n"
        "noise = gaussian\nnoise.sigma = 0.5\np = 0.7\nmu = cv\nseeds = 4, 5, 6\n");
    for (const std::string cmd : {"generate", "impute", "forecast", "cv", "eval"}) {
        const fs::path a = dir / (cmd + "_a.csv"), b = dir / (cmd + "_b.csv");
        ASSERT_EQ(run(cmd + " --config " + cfg.string() + " --output " + a.string()), 0) << stderr_text();
        ASSERT_EQ(run(cmd + " --config " + cfg.string() + " --output " + b.string()), 0) << stderr_text();
        EXPECT_EQ(slurp(a), slurp(b)) << cmd;
        if (fs::exists(dir / (cmd + "_a.report.csv")))
            EXPECT_EQ(slurp(dir / (cmd + "_a.report.csv")), slurp(dir / (cmd + "_b.report.csv"))) << cmd;
    }
}

TEST_F(Cli, ImputeIdentityPathAndCoverageFlag) {
    const fs::path cfg = write_config(
        "c.cfg", "T = 107\ncomponent.0.kind = lrf\ncomponent.0.omega = 0.1\ncomponent.0.poly = 1, 0.01\nL = 5\nmu = 0\n");
    ASSERT_EQ(run("impute --config " + cfg.string() + " --output " + (dir / "i.csv").string()), 0) << stderr_text();
    EXPECT_LE(report_rmse("i.report.csv", "pipeline", "all"), 1e-12);
    const tsme::CsvTable t = table("i.csv");
    EXPECT_EQ(t.header, (std::vector<std::string>{"t", "observed", "imputed", "covered"}));
    ASSERT_EQ(t.rows.size(), 107u);
    // N = floor(107 / 5) - 1 = 20 columns cover 1..100.
    for (std::size_t i = 0; i < 107; ++i) EXPECT_EQ(t.rows[i][3], i < 100 ? "1" : "0") << i;
}

TEST_F(Cli, ImputeFromGeneratedFile) {
    const fs::path gen = write_config(
        "g.cfg", "T = 3000\ncomponent.0.kind = harmonic\ncomponent.0.omega = 0.02\nnoise = gaussian\nnoise.sigma = 0.2\n"
                 "output = data.csv\n");
    ASSERT_EQ(run("generate --config " + gen.string() + " --output " + (dir / "data.csv").string()), 0);
    const fs::path cfg = write_config("i.cfg", "file = data.csv\np = 0.5\nmu = cv\n");
    ASSERT_EQ(run("impute --config " + cfg.string() + " --output " + (dir / "i.csv").string()), 0) << stderr_text();
    EXPECT_LT(report_rmse("i.report.csv", "pipeline", "missing_only"), 0.3);
}

TEST_F(Cli, ForecastConstantSeries) {
    const fs::path cfg = write_config("c.cfg", "T = 200\ncomponent.0.kind = lrf\ncomponent.0.poly = -1.25\nL = 6\nmu = 1\n");
    ASSERT_EQ(run("forecast --config " + cfg.string() + " --output " + (dir / "f.csv").string()), 0) << stderr_text();
    EXPECT_NEAR(report_rmse("f.report.csv", "pipeline", "forecast_horizon"), 0.0, 1e-10);
    const tsme::CsvTable t = table("f.csv");
    EXPECT_EQ(t.header, (std::vector<std::string>{"t", "observed", "forecast"}));
    ASSERT_EQ(t.rows.size(), 60u);
    EXPECT_EQ(t.rows.front()[0], "141");
}

TEST_F(Cli, ForecastNoiselessLrf) {
    const fs::path cfg = write_config(
        "c.cfg", "T = 500\ncomponent.0.kind = lrf\ncomponent.0.omega = 0.037\ncomponent.0.alpha = -0.001\n"
                 "component.1.kind = lrf\ncomponent.1.omega = 0.09\ncomponent.1.phi = 1\nL = 10\nmu = 0\n");
    ASSERT_EQ(run("forecast --config " + cfg.string() + " --output " + (dir / "f.csv").string()), 0) << stderr_text();
    EXPECT_LE(report_rmse("f.report.csv", "pipeline", "forecast_horizon"), 1e-3);
}

TEST_F(Cli, ForecastBeatsNaiveWithMissingData) {
    const fs::path cfg = fs::path(TSME_CONFIG_DIR) / "forecast_mixture.cfg";
    ASSERT_EQ(run("forecast --config " + cfg.string() + " --p 0.5 --output " + (dir / "f.csv").string()), 0)
        << stderr_text();
    const double pipeline = report_rmse("f.report.csv", "pipeline", "forecast_horizon");
    EXPECT_TRUE(std::isfinite(pipeline));
    EXPECT_LE(pipeline, report_rmse("f.report.csv", "naive_last_value", "forecast_horizon"));
}

TEST_F(Cli, CvSingleCandidateAndReproduction) {
    const std::string base =
        "T = 800\ncomponent.0.kind = harmonic\ncomponent.0.omega = 0.04\nnoise = gaussian\nnoise.sigma = 0.4\np = 0.8\n";
    const fs::path single = write_config("s.cfg", base + "cv.mu = 1.3\ncv.L = 7\n");
    ASSERT_EQ(run("cv --config " + single.string() + " --output " + (dir / "s.csv").string()), 0) << stderr_text();
    const tsme::CsvTable s = table("s.csv");
    EXPECT_EQ(s.header, (std::vector<std::string>{"L", "mu", "score", "status", "selected"}));
    ASSERT_EQ(s.rows.size(), 1u);
    EXPECT_EQ(s.rows[0][0], "7");
    EXPECT_EQ(s.rows[0][1], "1.3");
    EXPECT_EQ(s.rows[0][4], "1");

    const fs::path grid = write_config("g.cfg", base);
    ASSERT_EQ(run("cv --config " + grid.string() + " --output " + (dir / "g.csv").string()), 0) << stderr_text();
    std::vector<std::string> chosen;
    for (const auto& row : table("g.csv").rows)
        if (row[4] == "1") chosen = row;
    ASSERT_FALSE(chosen.empty());
    const fs::path again = write_config("a.cfg", base + "cv.mu = " + chosen[1] + "\ncv.L = " + chosen[0] + "\n");
    ASSERT_EQ(run("cv --config " + again.string() + " --output " + (dir / "a.csv").string()), 0) << stderr_text();
    EXPECT_EQ(table("a.csv").rows[0][2], chosen[2]);
}

TEST_F(Cli, EvalWritesMedianRows) {
    const fs::path cfg = write_config(
        "c.cfg", "T = 600\ncomponent.0.kind = harmonic\ncomponent.0.omega = 0.03\nnoise = gaussian\nnoise.sigma = 0.3\n"
                 "p = 0.7\nmu = 1\nseeds = 1, 2, 3\n");
    ASSERT_EQ(run("eval --config " + cfg.string() + " --output " + (dir / "e.csv").string()), 0) << stderr_text();
    const tsme::CsvTable t = table("e.csv");
    std::size_t medians = 0;
    for (const auto& row : t.rows) medians += row[0] == "median";
    EXPECT_EQ(medians, 2u);
    EXPECT_EQ(t.rows.size(), 8u);
}

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run(""), 1);
    EXPECT_EQ(run("impute"), 1);
    EXPECT_EQ(run("impute --config " + (dir / "absent.cfg").string()), 1);
    EXPECT_EQ(run("impute --config " + write_config("bad.cfg", "T = 10\n").string()), 1);
    EXPECT_EQ(run("impute --config " + write_config("l.cfg", std::string(kConstant) + "L = 1\noutput = x.csv\n").string()),
              1);

    std::ofstream(dir / "broken.csv", std::ios::binary) << "t,observed\n1,0.5\n2,abc\n";
    const fs::path cfg = write_config("f.cfg", "file = broken.csv\noutput = " + (dir / "o.csv").string() + "\n");
    EXPECT_EQ(run("impute --config " + cfg.string()), 2);
    EXPECT_NE(stderr_text().find("line 3"), std::string::npos) << stderr_text();
}

}  // namespace

int main(int argc, char** argv) {
    ::testing::InitGoogleTest(&argc, argv);
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_test <path-to-tsme>\n");
        return 2;
    }
    g_binary = fs::absolute(argv[1]).string();
    return RUN_ALL_TESTS();
}
