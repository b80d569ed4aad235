#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "elastica/asymptotics.hpp"
#include "elastica/cli.hpp"
#include "elastica/spectrum.hpp"

namespace fs = std::filesystem;
using elastica::cli::run;
using json = nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("elastica_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    static json load(const std::string& p) {
        std::ifstream f(p);
        return json::parse(f);
    }
    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, CoeffsLiuDecoupled) {
    const auto r = call({"coeffs", "--mu", "1", "--lambda", "-1", "--dim", "2", "--theory", "liu", "--json", path("c.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = load(path("c.json"));
    EXPECT_EQ(j["schema_version"], elastica::cli::kReportSchemaVersion);
    EXPECT_EQ(j["command"], "coeffs");
    const auto& th = j["outputs"]["theories"][0];
    EXPECT_NEAR(th["b_minus"].get<double>(), -1.0 / (2 * kPi), 1e-15);
    EXPECT_NEAR(th["b_plus"].get<double>(), 1.0 / (2 * kPi), 1e-15);
    EXPECT_EQ(th["sum_test"]["verdict"], "PASS");
    EXPECT_TRUE(th["sum_test"].contains("tolerance"));
}

TEST_F(CliTest, CoeffsBothFlagsCflvSum) {
    const auto r = call({"coeffs", "--mu", "1", "--lambda", "1", "--theory", "both"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("[liu]"), std::string::npos);
    EXPECT_NE(r.out.find("[cflv]"), std::string::npos);
    EXPECT_NE(r.out.find("sum test FAIL"), std::string::npos);
    EXPECT_NE(r.out.find("gamma_R"), std::string::npos);
}

TEST_F(CliTest, UsageAndIncompatibleStatuses) {
    EXPECT_EQ(call({"coeffs", "--lambda", "1"}).code, 2);
    EXPECT_EQ(call({}).code, 2);
    EXPECT_EQ(call({"frobnicate"}).code, 2);
    EXPECT_EQ(call({"coeffs", "--mu", "1", "--lambda", "1", "--theory", "xyz"}).code, 2);
    EXPECT_EQ(call({"--help"}).code, 0);
    const auto sing = call({"coeffs", "--mu", "1", "--lambda", "-1", "--theory", "cflv"});
    EXPECT_EQ(sing.code, 3);
    EXPECT_NE(sing.err.find("singular"), std::string::npos);
    EXPECT_EQ(call({"coeffs", "--mu", "0", "--lambda", "1"}).code, 2);
}

TEST_F(CliTest, SpectrumIncompatibleCombinations) {
    const auto a = call({"spectrum", "--domain", "disk", "--mu", "1", "--lambda", "-1", "--method", "potential",
                         "--lambda-max", "50", "--out", path("x.csv")});
    EXPECT_EQ(a.code, 3);
    EXPECT_EQ(call({"spectrum", "--domain", "square", "--mu", "1", "--lambda", "1", "--method", "potential",
                    "--lambda-max", "50", "--out", path("x.csv")}).code, 3);
    EXPECT_EQ(call({"spectrum", "--domain", "square", "--mu", "1", "--lambda", "1", "--method", "analytic",
                    "--lambda-max", "50", "--out", path("x.csv")}).code, 3);
    EXPECT_FALSE(fs::exists(path("x.csv")));
}

TEST_F(CliTest, AnalyticSquareThenHeatFit) {
    const auto s = call({"spectrum", "--domain", "square", "--mu", "1", "--lambda", "-1", "--bc", "dirichlet",
                         "--method", "analytic", "--lambda-max", "1e5", "--out", path("sq.csv")});
    ASSERT_EQ(s.code, 0) << s.err;
    const auto spec = elastica::read_spectrum_file(path("sq.csv"));
    EXPECT_EQ(spec.expanded()[0], 2 * kPi * kPi);

    const auto f = call({"fit", "--spectrum", path("sq.csv"), "--model", "heat", "--out", path("fit.json"),
                         "--series", path("series.csv")});
    ASSERT_EQ(f.code, 0) << f.err;
    const json j = load(path("fit.json"));
    const double b = j["outputs"]["fit"]["estimates"]["b"];
    const double target = -0.5 / std::sqrt(4 * kPi);
    EXPECT_NEAR(b, target, 0.05 * std::abs(target));
    EXPECT_EQ(j["outputs"]["fit"]["discriminator"].size(), 2u);
    EXPECT_TRUE(j["outputs"]["fit"]["stability"]["relative_change"].is_number());
    EXPECT_TRUE(j["outputs"]["fit"].contains("residual_threshold"));
    std::ifstream series(path("series.csv"));
    std::string header;
    std::getline(series, header);
    EXPECT_EQ(header, "t,Z,tail_bound");
}

TEST_F(CliTest, FitWindowErrors) {
    ASSERT_EQ(call({"spectrum", "--domain", "square", "--mu", "1", "--lambda", "-1", "--method", "analytic",
                    "--lambda-max", "1000", "--out", path("sq.csv")}).code, 0);
    const auto heat = call({"fit", "--spectrum", path("sq.csv"), "--model", "heat", "--window", "1e-5,1e-4",
                            "--out", path("f.json")});
    EXPECT_EQ(heat.code, 3);
    EXPECT_NE(heat.err.find("minimal admissible t"), std::string::npos);
    const auto cnt = call({"fit", "--spectrum", path("sq.csv"), "--model", "counting", "--window", "100,5000",
                           "--out", path("f.json")});
    EXPECT_EQ(cnt.code, 3);
    EXPECT_NE(cnt.err.find("lambda_max"), std::string::npos);
    EXPECT_EQ(call({"fit", "--spectrum", path("missing.csv"), "--model", "heat", "--out", path("f.json")}).code, 2);
    EXPECT_EQ(call({"fit", "--spectrum", path("sq.csv"), "--model", "heat", "--window", "abc",
                    "--out", path("f.json")}).code, 2);
}

TEST_F(CliTest, PlantedCountingFileIsRecovered) {
    // eigenvalues where a L + b S sqrt(L) crosses each integer
    const double a = 1.0 / (2 * kPi), b = -0.3, S = 4.0;
    elastica::Spectrum s{elastica::DomainGeometry::of(elastica::Domain::UnitSquare),
                         elastica::BoundaryCondition::Dirichlet, elastica::LameParams(1.0, -1.0), 1e6,
                         elastica::SpectrumMethod::AnalyticDecoupled, {}, {}};
    for (int k = 1;; ++k) {
        const double r = (-b * S + std::sqrt(b * b * S * S + 4 * a * k)) / (2 * a);
        if (r * r > 1e6) break;
        s.entries.push_back({r * r, 1, ""});
    }
    elastica::write_spectrum_file(path("planted.csv"), s);
    const auto f = call({"fit", "--spectrum", path("planted.csv"), "--model", "counting", "--out", path("p.json")});
    ASSERT_EQ(f.code, 0) << f.err;
    const double est = load(path("p.json"))["outputs"]["fit"]["estimates"]["b"];
    // the step function sits half a count below the planted curve on average
    EXPECT_NEAR(est, b, 1e-3);
}

TEST_F(CliTest, VerifySuites) {
    const auto all = call({"verify", "--suite", "all", "--mu", "1", "--lambda", "1", "--dim", "2", "--json", path("v.json")});
    EXPECT_EQ(all.code, 0) << all.out;
    EXPECT_EQ(all.out.find("FAIL "), std::string::npos);
    const json j = load(path("v.json"));
    EXPECT_EQ(j["outputs"]["verdict"], "PASS");
    EXPECT_EQ(j["outputs"]["cancellation"]["cflv_sum_test"]["verdict"], "FAIL");
    EXPECT_EQ(call({"verify", "--suite", "residue", "--mu", "2", "--lambda", "0", "--dim", "3"}).code, 0);
    EXPECT_EQ(call({"verify", "--suite", "prop71", "--mu", "1", "--lambda", "1"}).code, 0);
    EXPECT_EQ(call({"verify", "--mu", "0", "--lambda", "1"}).code, 2);
    EXPECT_EQ(call({"verify", "--mu", "1", "--lambda", "1", "--dim", "12"}).code, 2);
}

TEST_F(CliTest, SpectrumFemAndBoth) {
    const auto f = call({"spectrum", "--domain", "square", "--mu", "1", "--lambda", "1", "--bc", "free", "--method", "fem",
                         "--lambda-max", "60", "--h", "0.0625", "--out", path("fem.csv")});
    ASSERT_EQ(f.code, 0) << f.err;
    const auto s = elastica::read_spectrum_file(path("fem.csv"));
    EXPECT_EQ(s.entries[0].eigenvalue, 0.0);
    EXPECT_EQ(s.entries[0].multiplicity, 3);

    const auto b = call({"spectrum", "--domain", "disk", "--mu", "1", "--lambda", "1", "--method", "both",
                         "--lambda-max", "40", "--h", "0.0625", "--out", path("cmp.csv")});
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_TRUE(fs::exists(path("cmp.potential.csv")));
    EXPECT_TRUE(fs::exists(path("cmp.fem.csv")));
    const json j = load(path("cmp.comparison.json"));
    EXPECT_EQ(j["outputs"]["count_potential"], j["outputs"]["count_fem"]);
    EXPECT_EQ(j["outputs"]["divergent_samples"], 0);
    EXPECT_TRUE(j["outputs"]["pairs"][0].contains("tolerance"));
}
