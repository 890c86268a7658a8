#include "cli.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "test_support.hpp"

namespace trustq::cli {
namespace {

const std::string kDataDir = TRUSTQ_DATA_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           (std::string("trustq_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  // Failure contract: the expected status and exactly one stderr line.
  void expect_failure(const Outcome& r, int code, const std::string& needle = "") {
    EXPECT_EQ(r.code, code) << r.err;
    EXPECT_EQ(line_count(r.err), 1u) << r.err;
    EXPECT_EQ(r.err.rfind("trustq: error: ", 0), 0u) << r.err;
    if (!needle.empty()) EXPECT_NE(r.err.find(needle), std::string::npos) << r.err;
  }

  std::filesystem::path dir_;
};

TEST_F(Cli, SimulateEmitsGoldenRow) {
  const auto r = invoke({"simulate", kDataDir + "/scenarios/simulation1.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\n0,532000.000000,1118000.000000,650000.000000,1300000.000000,182000.000000,350000.000000\n"),
            std::string::npos);
  EXPECT_TRUE(r.err.empty());
}

TEST_F(Cli, SimulateWritesFileAndSummary) {
  const auto out = (dir_ / "t.csv").string();
  const auto r = invoke({"simulate", kDataDir + "/scenarios/simulation4.json", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("regime: Eroding"), std::string::npos) << r.out;
  EXPECT_EQ(testing::slurp(out).rfind("cycle,trustor_gain", 0), 0u);
}

TEST_F(Cli, SimulateJson) {
  const auto r = invoke({"simulate", kDataDir + "/scenarios/simulation1.json", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.at("trajectory").at(0).at("trustor_gain").get<double>(), 532000.0);
}

TEST_F(Cli, ScoreExample) {
  const auto r = invoke({"score", kDataDir + "/score/example_metrics.json", kDataDir + "/score/example_weights.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("raw score: 0.335562"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("warning: weights sum to"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("warning: outcome fractions sum to"), std::string::npos) << r.out;
}

TEST_F(Cli, ScoreAppendsHistory) {
  const auto history = (dir_ / "h.jsonl").string();
  const std::vector<std::string> args{"score", kDataDir + "/score/example_metrics.json",
                                      kDataDir + "/score/example_weights.json", "--history", history};
  ASSERT_EQ(invoke(args).code, 0);
  ASSERT_EQ(invoke(args).code, 0);
  EXPECT_EQ(line_count(testing::slurp(history)), 2u);
  const auto r = invoke({"history", history, "--window", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("verdict: Gentle"), std::string::npos) << r.out;
}

TEST_F(Cli, FairTradeText) {
  const auto r = invoke({"fairtrade", "--p", "0.85", "--q", "0.14", "--K", "2", "--point", "1,3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("lambda1: 0.513945\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("lambda2: -0.503945\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("TrustorFavoring"), std::string::npos) << r.out;
}

TEST_F(Cli, HelpSucceeds) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("simulate"), std::string::npos);
}

// Exit-code table.

TEST_F(Cli, MalformedJsonIsFormatError) {
  expect_failure(invoke({"simulate", write("s.json", "{\"name\": ")}), 2);
}

TEST_F(Cli, OutOfRangeShareIsValidationError) {
  const auto path = write("s.json", R"({"name": "x", "initial_value": 10, "cycles": [{"p": 1.5, "q": 0.1, "K": 2}]})");
  expect_failure(invoke({"simulate", path}), 1, "cycles[0].p");
}

TEST_F(Cli, MissingFileIsIoError) {
  expect_failure(invoke({"simulate", (dir_ / "nope.json").string()}), 2);
  expect_failure(invoke({"history", (dir_ / "nope.jsonl").string()}), 2);
}

TEST_F(Cli, ShortWeightsIsValidationError) {
  const auto weights = write("w.json", R"({"weights": [0.1, 0.2]})");
  expect_failure(invoke({"score", kDataDir + "/score/example_metrics.json", weights}), 1, "weights");
}

TEST_F(Cli, FairTradeDomainErrors) {
  expect_failure(invoke({"fairtrade", "--p", "0.5", "--q", "1.2", "--K", "2"}), 1, "q");
  expect_failure(invoke({"fairtrade", "--p", "abc", "--q", "0.1", "--K", "2"}), 2);
  expect_failure(invoke({"fairtrade", "--p", "0.5", "--q", "0.1", "--K", "2", "--point", "1"}), 1);
}

TEST_F(Cli, UsageErrors) {
  expect_failure(invoke({}), 2);
  expect_failure(invoke({"frobnicate"}), 2);
  expect_failure(invoke({"simulate", kDataDir + "/scenarios/simulation1.json", "--format", "xml"}), 2);
}

TEST_F(Cli, ShortHistoryIsInsufficientData) {
  std::string text;
  for (int i = 0; i < 3; ++i) {
    text += R"({"timestamp":"2024-01-01T00:00:0)" + std::to_string(i) +
            R"(Z","raw":0.5,"clamped":0.5,"contributions":[]})" + "\n";
  }
  expect_failure(invoke({"history", write("h.jsonl", text)}), 1, "at least 8");
}

TEST_F(Cli, OutOfOrderHistoryIsOrderingError) {
  const std::string text = R"({"timestamp":"2024-01-01T00:00:05Z","raw":0.5,"clamped":0.5,"contributions":[]})"
                           "\n"
                           R"({"timestamp":"2024-01-01T00:00:01Z","raw":0.5,"clamped":0.5,"contributions":[]})"
                           "\n";
  expect_failure(invoke({"history", write("h.jsonl", text), "--window", "2"}), 1, "line 2");
}

}  // namespace
}  // namespace trustq::cli
