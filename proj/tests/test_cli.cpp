// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "hoggar/cli.hpp"
#include "hoggar/io.hpp"
#include "support.hpp"

namespace hoggar {
namespace {

namespace fs = std::filesystem;
using testing::hoggar;
using testing::kHoggarV;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(ComplexLiteral, Grammar) {
  EXPECT_EQ(io::parse_complex("-1+2i"), Complex(-1, 2));
  EXPECT_EQ(io::parse_complex("-1-2i"), Complex(-1, -2));
  EXPECT_EQ(io::parse_complex("3"), Complex(3, 0));
  EXPECT_EQ(io::parse_complex("-i"), Complex(0, -1));
  EXPECT_EQ(io::parse_complex("0"), Complex(0, 0));
  EXPECT_EQ(io::parse_complex("1.5e-1+2.5E1i"), Complex(0.15, 25.0));
  const double s3 = std::sqrt(3.0);
  EXPECT_EQ(io::parse_complex("1+sqrt3i"), Complex(1, s3));
  EXPECT_EQ(io::parse_complex("1-sqrt3i"), Complex(1, -s3));
  const Complex q = io::parse_complex("0.5+0.5sqrt3+0.5i+0.5sqrt3i");
  EXPECT_LT(std::abs(q - (1.0 + s3) * Complex(1, 1) / 2.0), 1e-15);
  EXPECT_TRUE(is_admissible(sylvester_hadamard(1), q));
  for (const char* bad : {"", "abc", "1+", "1i2", "1++2i", "(1+i)", "1.2.3"}) {
    EXPECT_THROW(io::parse_complex(bad), InvalidArgument) << bad;
  }
}

TEST(Json, FloatFormatting) {
  EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_double(2.0), "2.0");
  EXPECT_EQ(io::format_double(std::nan("")), "null");
  io::Json j;
  j["b"] = 1;
  j["a"] = std::vector<double>{1.0, 0.5};
  EXPECT_EQ(io::dump(j), "{\n  \"b\": 1,\n  \"a\": [1.0, 0.5]\n}\n");
}

TEST(Json, FamilyRoundTripIsFixedPoint) {
  for (const auto& fam : {hoggar(), testing::tetrahedral(), jw_vectors(fourier_matrix(3), Complex(1, std::sqrt(3.0)))}) {
    const std::string a = io::dump(io::to_json(fam));
    const auto back = io::family_from_json(io::Json::parse(a));
    EXPECT_EQ(io::dump(io::to_json(back)), a);
    EXPECT_TRUE(back.hadamard() == fam.hadamard());
    for (int i = 0; i < fam.size(); ++i) EXPECT_EQ(max_abs_diff(back.vectors()[i].coords, fam.vectors()[i].coords), 0.0);
  }
}

TEST(Json, MalformedFamily) {
  EXPECT_THROW(io::family_from_json(io::Json::parse("{}")), InvalidArgument);
  auto j = io::to_json(hoggar());
  j["vectors"][0]["coords"].erase(0);
  EXPECT_THROW(io::family_from_json(j), InvalidArgument);
}

TEST(Json, EnsembleRoundTrip) {
  std::mt19937_64 rng(1);
  std::vector<QuantumState> states{QuantumState::pure(testing::haar_state(3, rng)),
                                   QuantumState::mixed(testing::random_density(3, rng))};
  const Ensemble e(states, {0.25, 0.75});
  const std::string a = io::dump(io::to_json(e));
  const auto back = io::ensemble_from_json(io::Json::parse(a));
  EXPECT_EQ(io::dump(io::to_json(back)), a);
  EXPECT_THROW(io::ensemble_from_json(io::Json::parse(R"({"weights":[1],"states":[{"kind":"x"}]})")), InvalidArgument);
}

TEST(Json, DesignRoundTrip) {
  const auto d = zero_blocks(hoggar(), hoggar(std::conj(kHoggarV)));
  const auto j = io::to_json(d);
  EXPECT_EQ(j["params"], io::Json::parse("[64,28,12]"));
  EXPECT_EQ(j["points"], 64);
  const auto back = io::design_from_json(j);
  EXPECT_EQ(io::dump(io::to_json(back)), io::dump(j));
  EXPECT_TRUE(verify_symmetric_design(back).pass);
}

TEST(Csv, IncidenceShape) {
  const auto csv = io::incidence_csv(zero_blocks(hoggar(), hoggar(std::conj(kHoggarV))));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 64);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '1'), 64 * 28);
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("hoggar_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    ::setenv(cli::kOutDirEnv, dir_.c_str(), 1);
  }
  void TearDown() override {
    ::unsetenv(cli::kOutDirEnv);
    fs::remove_all(dir_);
  }
  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }
  io::Json manifest(const std::string& command) { return io::Json::parse(slurp(dir_ / (command + ".manifest.json"))); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, ConstructWritesFamilyAndManifest) {
  ASSERT_EQ(run({"construct", "--d", "8", "--v=-1+2i", "--out", "hoggar.json"}), 0) << err_.str();
  ASSERT_TRUE(fs::exists(dir_ / "hoggar.json"));
  const auto m = manifest("construct");
  EXPECT_EQ(m["command"], "construct");
  EXPECT_EQ(m["artifacts"][0], (dir_ / "hoggar.json").string());
  EXPECT_FALSE(m["checks"].empty());
  EXPECT_EQ(m["version"]["format"], io::kFormatVersion);
  const auto fam = io::family_from_json(io::read_json_file((dir_ / "hoggar.json").string()));
  EXPECT_TRUE(verify_sic(fam).is_sic);
}

TEST_F(CliTest, EverySubcommandReadsConstructOutput) {
  ASSERT_EQ(run({"construct", "--v=-1+2i", "--out", "hoggar.json"}), 0);
  const std::string fam = (dir_ / "hoggar.json").string();
  for (const char* cmd : {"verify-sic", "covariance", "entropy", "mutual-info", "design-check", "bloch"}) {
    EXPECT_EQ(run({cmd, "--family", fam}), 0) << cmd << "\n" << err_.str();
  }
  ASSERT_EQ(run({"zero-design", "--family", fam, "--twin", "auto", "--out", "design.json"}), 0);
  const auto m = manifest("zero-design");
  for (const auto& c : m["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c["name"];
  EXPECT_EQ(io::read_json_file((dir_ / "design.json").string())["params"], io::Json::parse("[64,28,12]"));
}

TEST_F(CliTest, CertifyRecordsTheorems) {
  ASSERT_EQ(run({"construct", "--out", "hoggar.json"}), 0);
  ASSERT_EQ(run({"certify", "--family", (dir_ / "hoggar.json").string()}), 0) << out_.str() << err_.str();
  const auto m = manifest("certify");
  std::map<std::string, double> values;
  for (const auto& c : m["checks"]) values[c["name"].get<std::string>()] = c["value"].get<double>();
  EXPECT_NEAR(values.at("min entropy"), std::log(36.0), 1e-8);
  EXPECT_NEAR(values.at("informational power"), 2.0 * std::log(4.0 / 3.0), 1e-6);
}

TEST_F(CliTest, DeterministicArtifacts) {
  const std::vector<std::string> args{"min-entropy", "--d", "2", "--v=0.5+0.5sqrt3+0.5i+0.5sqrt3i",
                                      "--restarts", "8", "--seed", "5", "--out", "a.json"};
  ASSERT_EQ(run(args), 0) << err_.str();
  const std::string first = slurp(dir_ / "a.json");
  const std::string first_manifest = slurp(dir_ / "min-entropy.manifest.json");
  ASSERT_EQ(run(args), 0);
  EXPECT_EQ(slurp(dir_ / "a.json"), first);
  EXPECT_EQ(slurp(dir_ / "min-entropy.manifest.json"), first_manifest);
}

TEST_F(CliTest, CheckFailureExitsOne) {
  EXPECT_EQ(run({"verify-sic", "--v=2"}), 1);
  EXPECT_TRUE(fs::exists(dir_ / "verify-sic.manifest.json"));
  EXPECT_FALSE(manifest("verify-sic")["checks"][0]["pass"].get<bool>());
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}), 2);
  EXPECT_NE(err_.str().find("Usage"), std::string::npos);
  EXPECT_EQ(run({"no-such-command"}), 2);
  EXPECT_EQ(run({"construct", "--bogus"}), 2);
  EXPECT_EQ(run({"construct", "--format", "xml"}), 2);
  EXPECT_EQ(run({"construct", "--v=abc"}), 2);
  EXPECT_EQ(run({"verify-sic", "--family", (dir_ / "missing.json").string()}), 2);
  EXPECT_FALSE(fs::exists(dir_ / "construct.manifest.json"));
}

TEST_F(CliTest, CsvFormats) {
  ASSERT_EQ(run({"bloch", "--format", "csv", "--out", "bloch.csv"}), 0);
  const auto csv = slurp(dir_ / "bloch.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 65);
  EXPECT_EQ(csv.substr(0, 6), "S_0_1,");
  ASSERT_EQ(run({"zero-design", "--format", "csv", "--out", "inc.csv"}), 0);
  const auto inc = slurp(dir_ / "inc.csv");
  EXPECT_EQ(std::count(inc.begin(), inc.end(), '\n'), 64);
}

TEST_F(CliTest, BitsAffectsDisplayOnly) {
  ASSERT_EQ(run({"mutual-info", "--bits"}), 0);
  EXPECT_NE(out_.str().find("value=0.830074998557"), std::string::npos) << out_.str();
  const auto m = manifest("mutual-info");
  EXPECT_NEAR(m["checks"][0]["value"].get<double>(), 2.0 * std::log(4.0 / 3.0), 1e-12);
}

}  // namespace
}  // namespace hoggar
