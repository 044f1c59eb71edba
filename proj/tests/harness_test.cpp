// Copyright 2026 The Waybound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "waybound/harness.hpp"

#include <gtest/gtest.h>
#include <omp.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "waybound/errors.hpp"
#include "waybound/measurement.hpp"
#include "waybound/random.hpp"

namespace waybound {
namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string usage_message(const std::string& text, const std::string& experiment = "") {
  try {
    ExperimentConfig::parse(text, experiment);
  } catch (const UsageError& e) {
    return e.what();
  }
  return "";
}

TEST(ExperimentConfig, DefaultsAndCanonicalEcho) {
  const ExperimentConfig cfg = ExperimentConfig::parse("seed=3\nb=0.5\nsigma_p=1.0, 2\n",
                                                       "swap-sweep");
  EXPECT_EQ(cfg.experiment, "swap-sweep");
  EXPECT_EQ(cfg.seed, 3u);
  EXPECT_EQ(cfg.label("sigma_p"), "1,2");
  EXPECT_EQ(cfg.reals("sigma_p"), (std::vector<double>{1.0, 2.0}));
  EXPECT_EQ(cfg.label("chi"), "sy+");
  EXPECT_EQ(cfg.real("b"), 0.5);
  EXPECT_EQ(cfg.tolerance("base"), 1e-6);
  const ExperimentConfig again = ExperimentConfig::parse(cfg.emit());
  EXPECT_EQ(again.emit(), cfg.emit());
  EXPECT_EQ(again.params, cfg.params);
}

TEST(ExperimentConfig, RejectsWithFieldName) {
  EXPECT_NE(usage_message("seed=1\ntrails=3\n", "ozawa-random").find("'trails'"),
            std::string::npos);
  EXPECT_NE(usage_message("trials=3\n", "ozawa-random").find("'seed'"), std::string::npos);
  EXPECT_NE(usage_message("seed=1\ntrials=x\n", "ozawa-random").find("'trials'"),
            std::string::npos);
  EXPECT_NE(usage_message("seed=1\ntolerance.nope=1\n", "ozawa-random").find("tolerance.nope"),
            std::string::npos);
  EXPECT_NE(usage_message("seed=-1\n", "ozawa-random").find("'seed'"), std::string::npos);
  EXPECT_NE(usage_message("experiment=g-surface\nseed=1\n", "hadamard").find("g-surface"),
            std::string::npos);
  EXPECT_NE(usage_message("experiment=nope\nseed=1\n").find("nope"), std::string::npos);
  EXPECT_NE(usage_message("seed=1\n").find("'experiment'"), std::string::npos);
  // Values that parse but are out of range fail at run time, still by name.
  const ExperimentConfig cfg = ExperimentConfig::parse("seed=1\ntrials=-2\n", "ozawa-random");
  try {
    run_experiment(cfg);
    FAIL() << "expected usage error";
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("'trials'"), std::string::npos);
  }
}

TEST(ExperimentConfig, ToleranceOverride) {
  const ExperimentConfig cfg =
      ExperimentConfig::parse("seed=1\ntolerance.slack=1e-6\n", "ozawa-random");
  EXPECT_EQ(cfg.tolerance("slack"), 1e-6);
  EXPECT_NE(cfg.emit().find("tolerance.slack=1e-06"), std::string::npos);
}

TEST(RunExperiment, OzawaBatchMatchesDirectTrials) {
  const ExperimentConfig cfg = ExperimentConfig::parse("seed=7\ntrials=10\n", "ozawa-random");
  const ResultRecord rec = run_experiment(cfg);
  ASSERT_EQ(rec.reports.size(), 10u);
  for (std::size_t t = 0; t < 10; ++t) {
    const BoundReport& r = rec.reports[t];
    EXPECT_GE(r.slack, -1e-9);
    // Trial t replayed by hand from the split stream.
    Rng rng = Rng(7).split(t);
    const IndirectMeasurementModel m = random_measurement_model(rng, 8);
    const ComplexMatrix b = random_hermitian(2, rng);
    const BoundReport want = ozawa_check(m, b, random_state(2, rng));
    EXPECT_EQ(r.lhs, want.lhs) << t;
    EXPECT_EQ(r.rhs, want.rhs) << t;
    EXPECT_EQ(r.labels.at("point"), "trial=" + std::to_string(t));
  }
  EXPECT_EQ(exit_code(rec), 0);
}

TEST(RunExperiment, ByteIdenticalAcrossRunsAndThreadCounts) {
  const ExperimentConfig cfg = ExperimentConfig::parse("seed=11\ntrials=40\n", "weak-yanase");
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const std::string one = emit_report(run_experiment(cfg), OutputFormat::kJson);
  omp_set_num_threads(4);
  const std::string four = emit_report(run_experiment(cfg), OutputFormat::kJson);
  const std::string again = emit_report(run_experiment(cfg), OutputFormat::kJson);
  omp_set_num_threads(saved);
  EXPECT_EQ(one, four);
  EXPECT_EQ(four, again);
}

TEST(RunExperiment, SwapSweepSubstitution) {
  const ExperimentConfig cfg = ExperimentConfig::parse(
      "seed=1\nsigma_p=1\nb=1\nchi=sy+\nn_modes=64\nsigma_over_dp=4\n", "swap-sweep");
  const ResultRecord rec = run_experiment(cfg);
  ASSERT_EQ(rec.reports.size(), 1u);
  EXPECT_EQ(rec.reports[0].rhs, 0.5);
  EXPECT_TRUE(rec.reports[0].pass);
}

TEST(RunExperiment, TimingOnlyWhenRequested) {
  const ExperimentConfig cfg = ExperimentConfig::parse("seed=1\n", "g-surface");
  EXPECT_FALSE(run_experiment(cfg).wall_time_seconds.has_value());
  const ResultRecord timed = run_experiment(cfg, true);
  ASSERT_TRUE(timed.wall_time_seconds.has_value());
  EXPECT_GE(*timed.wall_time_seconds, 0.0);
  EXPECT_NE(emit_report(timed, OutputFormat::kJson).find("wall_time_seconds"), std::string::npos);
}

TEST(EmitReport, EmptyRecordGivesHeaderOnlyCsv) {
  ResultRecord rec;
  rec.config.experiment = "g-surface";
  EXPECT_EQ(emit_report(rec, OutputFormat::kCsv), "experiment,point,lhs,rhs,slack,pass\n");
  EXPECT_EQ(exit_code(rec), 0);
}

TEST(EmitReport, JsonRoundTripAndCsvRows) {
  const ExperimentConfig cfg = ExperimentConfig::parse("seed=5\ntrials=2\n", "appendix-d");
  const ResultRecord rec = run_experiment(cfg);
  const std::string json = emit_report(rec, OutputFormat::kJson);
  const ResultRecord back = record_from_json(nlohmann::json::parse(json));
  EXPECT_EQ(emit_report(back, OutputFormat::kJson), json);
  const std::string csv = emit_report(rec, OutputFormat::kCsv);
  std::istringstream in(csv);
  std::string line;
  std::size_t rows = 0;
  std::getline(in, line);
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 5) << line;
    EXPECT_EQ(line.rfind("appendix-d,", 0), 0u);
  }
  EXPECT_EQ(rows, rec.reports.size());
}

TEST(EmitReport, FailingReportGivesExitTwo) {
  ResultRecord rec;
  rec.config.experiment = "g-surface";
  rec.reports.push_back(BoundReport::make("a", 1.0, 0.0, 0.0));
  EXPECT_EQ(exit_code(rec), 0);
  rec.reports.push_back(BoundReport::make("b", 0.0, 1.0, 0.0));
  EXPECT_EQ(exit_code(rec), 2);
  EXPECT_EQ(rec.passed(), 1u);
}

TEST(Golden, RecordsMatchByteForByte) {
  std::size_t seen = 0;
  for (const ExperimentSchema& s : experiment_schemas()) {
    const fs::path cfg_path = fs::path(WAYBOUND_GOLDEN_DIR) / (s.name + ".cfg");
    ASSERT_TRUE(fs::exists(cfg_path)) << cfg_path;
    const ExperimentConfig cfg = ExperimentConfig::parse(read_file(cfg_path), s.name);
    const ResultRecord rec = run_experiment(cfg);
    const std::string want = read_file(fs::path(WAYBOUND_GOLDEN_DIR) / (s.name + ".json"));
    EXPECT_EQ(emit_report(rec, OutputFormat::kJson), want) << s.name;
    EXPECT_TRUE(rec.all_pass()) << s.name;
    ++seen;
  }
  EXPECT_EQ(seen, 12u);
}

// ------------------------------------------------------------------- CLI

int cli(const std::string& args) {
  const std::string cmd = std::string(WAYBOUND_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("waybound_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  fs::path dir_;
};

TEST_F(Cli, ExitCodes) {
  const std::string good = write("good.cfg", "seed=1\ntrials=3\n");
  EXPECT_EQ(cli("ozawa-random --config " + good), 0);
  EXPECT_EQ(cli("ozawa-random"), 1);  // --config is required
  EXPECT_EQ(cli("no-such-experiment --config " + good), 1);
  EXPECT_EQ(cli("ozawa-random --config " + write("bad.cfg", "seed=1\nbogus=2\n")), 1);
  EXPECT_EQ(cli("ozawa-random --config " + good + " --format xml"), 1);
  EXPECT_EQ(cli("ozawa-random --config " + (dir_ / "missing.cfg").string()), 1);
  // Far from SWAP at b = 1, so the perfection check fails.
  const std::string fail = write(
      "fail.cfg", "seed=1\nb=1\ncheck=perfection\nn_modes=64\nsigma_over_dp=4\nstarts=2\n"
                  "max_iters=50\nrestarts=0\n");
  EXPECT_EQ(cli("swap-fidelity --config " + fail), 2);
}

TEST_F(Cli, SeedOverrideAndOutputs) {
  const std::string cfg = write("c.cfg", "seed=1\ntrials=4\n");
  const fs::path a = dir_ / "a.json", b = dir_ / "b.json", c = dir_ / "c.csv";
  ASSERT_EQ(cli("way-additive --config " + cfg + " --out " + a.string()), 0);
  ASSERT_EQ(cli("way-additive --config " + cfg + " --seed 9 --out " + b.string()), 0);
  ASSERT_EQ(cli("way-additive --config " + cfg + " --format csv --out " + c.string()), 0);
  const auto ja = nlohmann::json::parse(read_file(a));
  const auto jb = nlohmann::json::parse(read_file(b));
  EXPECT_EQ(ja["config"]["seed"], 1);
  EXPECT_EQ(jb["config"]["seed"], 9);
  EXPECT_NE(ja["reports"], jb["reports"]);
  EXPECT_EQ(read_file(c).rfind("experiment,point,lhs,rhs,slack,pass\n", 0), 0u);
  // The record's own config reproduces it.
  const ExperimentConfig echo = config_from_json(ja["config"]);
  EXPECT_EQ(emit_report(run_experiment(echo), OutputFormat::kJson), read_file(a));
}

}  // namespace
}  // namespace waybound
