#include "cli.hpp"

#include "pidpp/fixtures.hpp"
#include "pidpp/matrix_io.hpp"
#include "pidpp/treedecomp.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace pidpp {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("pidpp_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string write_matrix(const std::string& name, const Matrix& m) { return write(name, format_matrix_text(m)); }

  int run(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, NormalizeExamples) {
  const std::string i2 = write_matrix("i2.mat", Matrix::identity(2));
  const std::string i4 = write_matrix("i4.mat", Matrix::identity(4));
  EXPECT_EQ(run({"normalize", "--algo", "brute", i2, i2}), cli::kExitOk);
  EXPECT_EQ(out_.str(), "4\n");
  EXPECT_EQ(run({"normalize", "--size", "2", i4}), cli::kExitOk);
  EXPECT_EQ(out_.str(), "6\n");
  EXPECT_EQ(run({"normalize", "--algo", "treewidth", i4, i4}), cli::kExitOk);
  EXPECT_EQ(out_.str(), "16\n");
  EXPECT_EQ(run({"normalize", "--exponent", "2", i2}), cli::kExitOk);
  EXPECT_EQ(out_.str(), "4\n");
}

TEST_F(CliTest, StrategiesPrintIdenticalValues) {
  const std::string a = write_matrix("a.mat", banded_random(8, 1, 2, 3));
  const std::string b = write_matrix("b.mat", banded_random(8, 2, 2, 4));
  std::vector<std::string> outputs;
  for (const char* algo : {"brute", "rank", "treewidth", "auto"}) {
    EXPECT_EQ(run({"normalize", "--algo", algo, a, b}), cli::kExitOk) << err_.str();
    outputs.push_back(out_.str());
  }
  for (const auto& o : outputs) EXPECT_EQ(o, outputs.front());
}

TEST_F(CliTest, SampleIsDeterministic) {
  FixtureRng rng(211);
  const std::string a = write_matrix("a.mat", random_psd(5, 5, rng));
  ASSERT_EQ(run({"sample", "--count", "3", "--seed", "7", a}), cli::kExitOk);
  const std::string first = out_.str();
  ASSERT_EQ(run({"sample", "--count", "3", "--seed", "7", a}), cli::kExitOk);
  EXPECT_EQ(out_.str(), first);
  EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 3);
  EXPECT_EQ(first.front(), '{');
}

TEST_F(CliTest, JsonOutput) {
  const std::string i2 = write_matrix("i2.mat", Matrix::identity(2));
  ASSERT_EQ(run({"--json", "normalize", i2, i2}), cli::kExitOk);
  const auto doc = nlohmann::json::parse(out_.str());
  EXPECT_EQ(doc["command"], "normalize");
  EXPECT_EQ(doc["value"], "4");
  EXPECT_EQ(doc["algorithm"]["strategy"], "brute");
  EXPECT_TRUE(doc.contains("wall_time_ms"));
  ASSERT_EQ(run({"--json", "edpp", "--exponent", "3/2", i2}), cli::kExitOk);
  const auto e = nlohmann::json::parse(out_.str());
  EXPECT_EQ(e["command"], "edpp");
  EXPECT_EQ(e["result"]["lo"], "4");
  EXPECT_EQ(e["result"]["branch"], "ceil");
  EXPECT_TRUE(e["result"].contains("hi"));
}

TEST_F(CliTest, MapAndEdpp) {
  const std::string d = write_matrix("d.mat", Matrix::diagonal({2, Rational(1, 2)}));
  ASSERT_EQ(run({"map", "--seed", "3", "--verify", d}), cli::kExitOk);
  EXPECT_EQ(out_.str().substr(0, 6), "{0} 2\n");
  EXPECT_NE(out_.str().find("within_bound yes"), std::string::npos);
  const std::string i2 = write_matrix("i2.mat", Matrix::identity(2));
  ASSERT_EQ(run({"edpp", "--exponent", "1.5", i2}), cli::kExitOk);
  EXPECT_EQ(out_.str().substr(0, 4), "[4, ");
}

TEST_F(CliTest, Generators) {
  const std::string g = write("p3.bg", "1 2 2\n0 0\n0 1\n");
  ASSERT_EQ(run({"gen", "matching", g, "--out", (dir_ / "p3").string()}), cli::kExitOk);
  const std::string a = (dir_ / "p3_A.mat").string();
  const std::string b = (dir_ / "p3_B.mat").string();
  EXPECT_EQ(read_matrix_file(a), Matrix::ones(2));
  EXPECT_EQ(read_matrix_file(b), Matrix::identity(2));
  ASSERT_EQ(run({"normalize", a, b}), cli::kExitOk);
  EXPECT_EQ(out_.str(), "3\n");

  ASSERT_EQ(run({"gen", "partition", "--groups", "0,1;2", "--n", "3"}), cli::kExitOk);
  EXPECT_EQ(parse_matrix(out_.str()), partition_matrix({{0, 1}, {2}}, 3));

  ASSERT_EQ(run({"gen", "banded", "--n", "10", "--bandwidth", "2", "--seed", "5"}), cli::kExitOk);
  EXPECT_EQ(parse_matrix(out_.str()), banded_random(10, 2, std::nullopt, 5));

  const std::string path = write("path.dg", "3 2\n0 1\n1 2\n");
  ASSERT_EQ(run({"gen", "hampath", path, "--out", (dir_ / "hp").string()}), cli::kExitOk);
  EXPECT_TRUE(fs::exists(dir_ / "hp_C.mat"));
}

TEST_F(CliTest, TreeDecompositionReport) {
  const std::string a = write_matrix("a.mat", banded_random(12, 2, std::nullopt, 1));
  ASSERT_EQ(run({"tw", "--print", a}), cli::kExitOk);
  EXPECT_NE(out_.str().find("width 2"), std::string::npos);
  const std::string report = out_.str();
  const std::string td_text = report.substr(report.find("\n0 bag") + 1);
  const std::string td = write("a.td", td_text);
  ASSERT_EQ(run({"tw", "--check", td, a}), cli::kExitOk) << err_.str();
  EXPECT_EQ(out_.str(), "valid\nwidth 2\n");
  const std::string broken = write("broken.td", "0 bag -1 0 1 2\n");
  ASSERT_EQ(run({"tw", "--check", broken, a}), cli::kExitOk);
  EXPECT_EQ(out_.str().substr(0, 8), "invalid:");
}

TEST_F(CliTest, ExitCodes) {
  const std::string i2 = write_matrix("i2.mat", Matrix::identity(2));
  const std::string swap = write_matrix("swap.mat", Matrix{{0, 1}, {1, 0}});
  EXPECT_EQ(run({}), cli::kExitUsage);
  EXPECT_EQ(run({"normalize", "--bogus", i2}), cli::kExitUsage);
  EXPECT_EQ(run({"normalize", (dir_ / "missing.mat").string()}), cli::kExitUsage);
  EXPECT_EQ(run({"normalize", write("junk.mat", "2\n1 2\n")}), cli::kExitUsage);
  EXPECT_EQ(run({"normalize", "--algo", "nope", i2}), cli::kExitUsage);
  EXPECT_EQ(run({"normalize", i2, write_matrix("i3.mat", Matrix::identity(3))}), cli::kExitUsage);
  EXPECT_EQ(run({"normalize", "--algo", "rank", swap}), cli::kExitComputation);
  EXPECT_EQ(run({"normalize", "--algo", "treewidth", "--max-keys", "1", i2, i2}), cli::kExitComputation);
  EXPECT_EQ(run({"edpp", "--exponent", "3/2", swap}), cli::kExitComputation);
  EXPECT_FALSE(err_.str().empty());
}

TEST_F(CliTest, BruteCapFromEnvironment) {
  const std::string i5 = write_matrix("i5.mat", Matrix::identity(5));
  ::setenv("PIDPP_MAX_BRUTE_N", "4", 1);
  const int code = run({"normalize", "--algo", "brute", i5});
  ::unsetenv("PIDPP_MAX_BRUTE_N");
  EXPECT_EQ(code, cli::kExitComputation);
  EXPECT_EQ(run({"normalize", "--algo", "brute", i5}), cli::kExitOk);
  EXPECT_EQ(out_.str(), "32\n");
}

}  // namespace
}  // namespace pidpp
