#include "gcdmd/cli.hpp"
#include "gcdmd/report.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gcdmd;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "gcdmd");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

Json load_json(const std::string& path) { return Json::parse(read_file(path)); }

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

// Writes the coherency fixture CSV and returns its path.
std::string coherency_csv(const testutil::TempDir& dir) {
  EXPECT_EQ(run({"synth", "--family", "coherency", "--out", dir.path().string(), "--name", "coh"}), 0);
  return dir.file("coh.csv");
}

}

TEST(Cli, ValidateConstantDataExitsTwo) {
  testutil::TempDir dir("cli_const");
  write_csv(TimeSeries(Matrix::Constant(3, 40, 1.0), 0.01), dir.file("c.csv"));
  EXPECT_EQ(run({"validate", "--input", dir.file("c.csv"), "--lag", "2", "--out", dir.file("o")}), 2);
  const Json j = load_json(dir.file("o/validation.json"));
  EXPECT_FALSE(j.at("pe").at("satisfied").get<bool>());
  EXPECT_EQ(j.at("kind"), "validation");
}

TEST(Cli, ValidateMissingFileExitsOne) {
  testutil::TempDir dir("cli_missing");
  EXPECT_EQ(run({"validate", "--input", dir.file("nope.csv"), "--out", dir.file("o")}), 1);
  EXPECT_EQ(run({"validate", "--out", dir.file("o")}), 1);
}

TEST(Cli, BadFlagsExitOne) {
  testutil::TempDir dir("cli_flags");
  EXPECT_EQ(run({"validate", "--input", "x.csv", "--alpha", "1.5", "--out", dir.file("o")}), 1);
  EXPECT_EQ(run({"validate", "--frobnicate"}), 1);
  EXPECT_EQ(run({"sweep", "--input", "x.csv", "--gct-mode", "sideways"}), 1);
}

TEST(Cli, SweepWritesReportAndColumns) {
  testutil::TempDir dir("cli_sweep");
  const std::string csv = coherency_csv(dir);
  const std::string out = dir.file("sweep");
  EXPECT_EQ(run({"sweep", "--input", csv, "--dt", "0.01", "--lag-range", "1:34", "--energy", "1.0", "--out", out}), 0);
  const Json j = load_json(out + "/sweep.json");
  EXPECT_FALSE(j.at("l_star").is_null());
  EXPECT_EQ(j.at("records").size(), 34u);
  for (const char* f : {"sweep_columns.csv", "pvalue_vs_lag.csv", "statistic_vs_lag.csv", "cond_vs_lag.csv",
                        "eigenvalues.csv"})
    EXPECT_TRUE(fs::exists(out + "/" + f)) << f;
  EXPECT_EQ(count_lines(read_file(out + "/pvalue_vs_lag.csv")), 35);
  const int ls = j.at("l_star").get<int>();

  // the training prefix alone validates as usable at the same lag
  ASSERT_EQ(run({"synth", "--family", "coherency", "--length", "240", "--out", dir.path().string(), "--name", "tr"}), 0);
  EXPECT_EQ(run({"validate", "--input", dir.file("tr.csv"), "--dt", "0.01", "--lag", std::to_string(ls), "--out",
                 dir.file("v")}),
            0);
  EXPECT_TRUE(load_json(dir.file("v/validation.json")).at("usable").get<bool>());
}

TEST(Cli, SweepWidthOneRange) {
  testutil::TempDir dir("cli_w1");
  const std::string csv = coherency_csv(dir);
  EXPECT_EQ(run({"sweep", "--input", csv, "--dt", "0.01", "--lag-range", "4:4", "--out", dir.file("s")}), 2);
  EXPECT_EQ(count_lines(read_file(dir.file("s/pvalue_vs_lag.csv"))), 2);
  EXPECT_EQ(count_lines(read_file(dir.file("s/cond_vs_lag.csv"))), 2);
}

TEST(Cli, UnwritableOutputExitsOne) {
  testutil::TempDir dir("cli_unwritable");
  const std::string csv = coherency_csv(dir);
  std::ofstream(dir.file("blocker")) << "x";
  EXPECT_EQ(run({"sweep", "--input", csv, "--lag-range", "2:3", "--out", dir.file("blocker/sub")}), 1);
}

TEST(Cli, FitWritesModelPredictionAndReport) {
  testutil::TempDir dir("cli_fit");
  const std::string csv = coherency_csv(dir);
  EXPECT_EQ(run({"fit", "--input", csv, "--dt", "0.01", "--lag", "12", "--energy", "1.0", "--out", dir.file("f")}), 0);
  const TimeSeries pred = load_csv(dir.file("f/prediction.csv"), 0.01);
  EXPECT_EQ(pred.samples(), 360);
  EXPECT_EQ(pred.channels(), 6);
  const Json rep = load_json(dir.file("f/fit_report.json"));
  EXPECT_EQ(rep.at("train_samples"), 240);
  EXPECT_EQ(rep.at("analysis").at("test_rmse").size(), 6u);
  EXPECT_EQ(load_json(dir.file("f/model.json")).at("kind"), "dmd_model");
}

TEST(Cli, GrangerThreeChannelRoundTrip) {
  testutil::TempDir dir("cli_granger");
  ASSERT_EQ(run({"synth", "--family", "graph3", "--seed", "13", "--length", "5000", "--out", dir.path().string(),
                 "--name", "graph3"}),
            0);
  ASSERT_EQ(run({"granger", "--input", dir.file("graph3.csv"), "--order", "4", "--out", dir.file("g")}), 0);
  const Json j = load_json(dir.file("g/causality.json"));
  const auto bin = j.at("binary").get<std::vector<std::vector<int>>>();
  EXPECT_EQ(bin, (std::vector<std::vector<int>>{{0, 0, 1}, {1, 0, 1}, {1, 1, 0}}));
  EXPECT_EQ(run({"granger", "--input", dir.file("graph3.csv"), "--order", "auto", "--out", dir.file("g2")}), 0);
}

TEST(Cli, SynthFamiliesAndSidecar) {
  testutil::TempDir dir("cli_synth");
  std::ofstream(dir.file("lin.json")) << R"({"a": [[0.9, 0.1], [0.0, 0.8]], "x0": [1, 2]})";
  EXPECT_EQ(run({"synth", "--family", "linear", "--spec", dir.file("lin.json"), "--length", "20", "--out",
                 dir.path().string(), "--name", "lin"}),
            0);
  EXPECT_EQ(load_csv(dir.file("lin.csv"), 1.0).samples(), 20);
  std::ofstream(dir.file("g.json")) << R"({"adjacency": [[1, 0], [1, 1]], "order": 1, "seed": 5})";
  EXPECT_EQ(run({"synth", "--family", "var", "--spec", dir.file("g.json"), "--length", "500", "--out",
                 dir.path().string(), "--name", "v"}),
            0);
  const Json side = load_json(dir.file("v.json"));
  EXPECT_EQ(side.at("spec").at("seed"), 5);
  EXPECT_EQ(side.at("kind"), "synth_spec");
  EXPECT_EQ(run({"synth", "--family", "coherency", "--out", dir.path().string(), "--name", "c"}), 0);
  EXPECT_EQ(load_json(dir.file("c.json")).at("spec").at("seed"), 17);
}

TEST(Cli, SynthInvalidSpecExitsOne) {
  testutil::TempDir dir("cli_synth_bad");
  std::ofstream(dir.file("bad.json")) << R"({"groups": [0, 0, 3, 0, 0, 0]})";
  EXPECT_EQ(run({"synth", "--family", "coherency", "--spec", dir.file("bad.json"), "--out", dir.path().string()}), 1);
  EXPECT_EQ(run({"synth", "--family", "linear", "--out", dir.path().string()}), 1);
  EXPECT_EQ(run({"synth", "--family", "nope", "--out", dir.path().string()}), 1);
}

TEST(Cli, RerunIsByteIdentical) {
  testutil::TempDir dir("cli_idem");
  const std::string csv = coherency_csv(dir);
  const std::vector<std::string> args{"sweep", "--input", csv, "--dt", "0.01", "--lag-range", "8:14",
                                      "--energy", "1.0", "--out", dir.file("s")};
  ASSERT_EQ(run(args), 0);
  const std::string first = read_file(dir.file("s/sweep.json"));
  const std::string cols = read_file(dir.file("s/sweep_columns.csv"));
  ASSERT_EQ(run(args), 0);
  EXPECT_EQ(read_file(dir.file("s/sweep.json")), first);
  EXPECT_EQ(read_file(dir.file("s/sweep_columns.csv")), cols);
  const std::string csv1 = read_file(csv);
  coherency_csv(dir);
  EXPECT_EQ(read_file(csv), csv1);
}

TEST(Cli, FlagsOverrideConfigFile) {
  testutil::TempDir dir("cli_cfg");
  const std::string csv = coherency_csv(dir);
  std::ofstream(dir.file("cfg.json")) << R"({"input": ")" << csv
                                      << R"(", "dt": 0.01, "lag_range": [9, 12], "energy": 1.0, "alpha": 0.01})";
  ASSERT_EQ(run({"sweep", "--config", dir.file("cfg.json"), "--alpha", "0.05", "--out", dir.file("s")}), 0);
  const Json j = load_json(dir.file("s/sweep.json"));
  EXPECT_EQ(j.at("alpha"), 0.05);
  EXPECT_EQ(j.at("records").size(), 4u);
  EXPECT_EQ(j.at("config").at("rank").at("energy"), 1.0);
}

TEST(Cli, ConfigDefaults) {
  RunConfig c;
  EXPECT_EQ(c.alpha, 0.05);
  EXPECT_NEAR(c.split, 2.0 / 3.0, 1e-15);
  EXPECT_EQ(c.rank.tau, 0.999);
  EXPECT_EQ(c.p_max, 10);
  apply_config_json(c, R"({"rank": 3, "gct_order": "auto", "criterion": "aic"})");
  EXPECT_EQ(c.rank.kind, RankPolicy::Kind::fixed);
  EXPECT_EQ(c.gct_order, 0);
  EXPECT_EQ(c.criterion, Criterion::aic);
  EXPECT_THROW(apply_config_json(c, "[1, 2]"), Error);
}
