// Copyright 2026 The Groundwork Authors
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

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "groundwork/core/io.h"
#include "groundwork/kinematics/correspondence.h"
#include "groundwork/pipeline/config.h"
#include "groundwork/pipeline/pipeline.h"
#include "groundwork/synth/humanoid.h"
#include "test_support.h"

namespace groundwork {
namespace {

namespace fs = std::filesystem;
using testing::ReadFile;
using testing::ScratchDir;

// Relative path -> contents for every file below `root`.
std::map<std::string, std::string> Tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  if (!fs::exists(root)) return files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      files[fs::relative(e.path(), root).generic_string()] = ReadFile(e.path());
    }
  }
  return files;
}

SourceMotion Render(synth::MotionKind kind, double seconds = 4.0) {
  synth::MotionParams p;
  p.kind = kind;
  p.seconds = seconds;
  return synth::RenderSource(synth::TestHumanoid(), synth::GenerateMotion(p));
}

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    SaveRobotModel(synth::TestHumanoid(), dir_ / "robot.json");
    WriteJsonFile(CorrespondenceEntriesToJson(synth::TestCorrespondence()),
                  dir_ / "correspondence.json");
    WriteJsonFile({{"robot_model", "robot.json"},
                   {"correspondence", "correspondence.json"},
                   {"optimizer", {{"iterations", 40}, {"seed", 7}}}},
                  dir_ / "config.json");
    fs::create_directories(dir_ / "in");
    SaveSourceMotion(Render(synth::MotionKind::kWalk), dir_ / "in" / "walk.json");
    SaveSourceMotion(Render(synth::MotionKind::kSquat), dir_ / "in" / "squat.json");
  }

  RunOptions Options() const {
    RunOptions run;
    run.config = LoadPipelineConfig(dir_ / "config.json");
    return run;
  }

  ScratchDir dir_;
};

TEST(PipelineConfigTest, FileOverridesDefaultsAndResolvesPaths) {
  ScratchDir dir;
  WriteJsonFile({{"robot_model", "r.json"},
                 {"thresholds", {{"max_root_jerk", 42.0}}},
                 {"optimizer", {{"mode", "sink"}, {"weights", {{"skate", 0.5}}}}}},
                dir / "c.json");
  const PipelineConfig cfg = LoadPipelineConfig(dir / "c.json");
  EXPECT_EQ(cfg.robot_model, dir / "r.json");
  EXPECT_DOUBLE_EQ(cfg.curation.thresholds.max_root_jerk, 42.0);
  EXPECT_EQ(cfg.optimizer.mode, RetargetMode::kSINK);
  EXPECT_DOUBLE_EQ(cfg.optimizer.weights.skate, 0.5);
  const PipelineConfig defaults;
  EXPECT_EQ(cfg.optimizer.iterations, defaults.optimizer.iterations);
  EXPECT_DOUBLE_EQ(cfg.optimizer.weights.ground, defaults.optimizer.weights.ground);
}

TEST(PipelineConfigTest, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(PipelineConfigFromJson({{"colour", 1}}, "."), FormatError);
  EXPECT_THROW(PipelineConfigFromJson({{"optimizer", {{"iteration", 5}}}}, "."),
               FormatError);
  EXPECT_THROW(PipelineConfigFromJson({{"optimizer", {{"weights", {{"skates", 1}}}}}}, "."),
               FormatError);
  EXPECT_THROW(PipelineConfigFromJson({{"optimizer", {{"iterations", "many"}}}}, "."),
               FormatError);
  EXPECT_THROW(PipelineConfigFromJson({{"optimizer", {{"mode", "fast"}}}}, "."),
               FormatError);
  EXPECT_THROW(PipelineConfigFromJson({{"filter", {{"order", 3}}}}, "."), FormatError);
  EXPECT_THROW(PipelineConfigFromJson({{"workers", -1}}, "."), FormatError);
}

TEST(PipelineConfigTest, JsonRoundTrip) {
  PipelineConfig cfg;
  cfg.optimizer.mode = RetargetMode::kSINKFeasibility;
  cfg.optimizer.seed = 99;
  cfg.curation.filter.cutoff_pose = 5.0;
  cfg.workers = 3;
  const nlohmann::json doc = PipelineConfigToJson(cfg);
  EXPECT_EQ(PipelineConfigToJson(PipelineConfigFromJson(doc, "")), doc);
}

TEST(PipelineConfigTest, MissingFilesFailValidation) {
  PipelineConfig cfg;
  EXPECT_NO_THROW(cfg.Validate(false));
  EXPECT_THROW(cfg.Validate(true), std::invalid_argument);
  cfg.robot_model = "/nonexistent/robot.json";
  cfg.correspondence = "/nonexistent/corr.json";
  EXPECT_THROW(cfg.Validate(true), std::invalid_argument);
}

TEST(CollectInputsTest, ExpandsSortsAndRejectsStemCollisions) {
  ScratchDir dir;
  fs::create_directories(dir / "a");
  fs::create_directories(dir / "b");
  WriteTextFile("{}", dir / "a" / "z.json");
  WriteTextFile("{}", dir / "a" / "m.json");
  WriteTextFile("x", dir / "a" / "notes.txt");
  WriteTextFile("{}", dir / "b" / "m.json");
  const auto files = CollectInputs({dir / "a"});
  ASSERT_EQ(files.size(), 2u);
  EXPECT_EQ(files[0].filename(), "m.json");
  EXPECT_EQ(files[1].filename(), "z.json");
  EXPECT_EQ(CollectInputs({dir / "a" / "z.json", dir / "a"}).size(), 2u);
  EXPECT_THROW(CollectInputs({dir / "a", dir / "b"}), std::invalid_argument);
  EXPECT_THROW(CollectInputs({dir / "missing"}), std::invalid_argument);
}

TEST(ParallelForTest, VisitsEveryIndexOnce) {
  for (int workers : {0, 1, 3, 16}) {
    std::vector<std::atomic<int>> hits(50);
    ParallelFor(50, workers, [&](int i) { ++hits[i]; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
}

TEST_F(PipelineTest, CurateWritesClipsAndReports) {
  SaveSourceMotion(Render(synth::MotionKind::kWalk, 8.0), dir_ / "in" / "long.json");
  const CommandStatus s = RunCurate(CollectInputs({dir_ / "in"}), dir_ / "out", Options());
  EXPECT_EQ(s.exit_code(), 0);
  EXPECT_EQ(s.processed, 3);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "clips" / "long_c000.json"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "clips" / "long_c001.json"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "clips" / "walk_c000.json"));
  const nlohmann::json report = ReadJsonFile(dir_ / "out" / "curation_report.json");
  EXPECT_EQ(report["inputs"].size(), 3u);
  EXPECT_EQ(report["totals"]["kept"], 4);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "curation_report.csv"));
}

TEST_F(PipelineTest, CorruptFileIsReportedOthersProceed) {
  WriteTextFile("{\"fps\": 30, \"joints\": [", dir_ / "in" / "broken.json");
  const CommandStatus s = RunCurate(CollectInputs({dir_ / "in"}), dir_ / "out", Options());
  EXPECT_EQ(s.exit_code(), 1);
  ASSERT_EQ(s.errors.size(), 1u);
  EXPECT_NE(s.errors[0].find("broken.json"), std::string::npos);
  EXPECT_EQ(s.processed, 2);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "clips" / "walk_c000.json"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "clips" / "squat_c000.json"));
}

TEST_F(PipelineTest, ReportContentIndependentOfWorkerCount) {
  RunOptions a = Options();
  a.config.workers = 1;
  RunOptions b = Options();
  b.config.workers = 4;
  RunCurate(CollectInputs({dir_ / "in"}), dir_ / "a", a);
  RunCurate(CollectInputs({dir_ / "in"}), dir_ / "b", b);
  EXPECT_EQ(Tree(dir_ / "a"), Tree(dir_ / "b"));
}

TEST_F(PipelineTest, DryRunWritesNothing) {
  RunOptions run = Options();
  run.dry_run = true;
  const auto inputs = CollectInputs({dir_ / "in"});
  EXPECT_EQ(RunCurate(inputs, dir_ / "c", run).exit_code(), 0);
  EXPECT_EQ(RunRetarget(inputs, dir_ / "r", run).exit_code(), 0);
  EXPECT_EQ(RunPipeline(inputs, dir_ / "p", run).exit_code(), 0);
  EXPECT_FALSE(fs::exists(dir_ / "c"));
  EXPECT_FALSE(fs::exists(dir_ / "r"));
  EXPECT_FALSE(fs::exists(dir_ / "p"));
}

TEST_F(PipelineTest, RetargetWritesMotionAndTrace) {
  RunOptions run = Options();
  const auto inputs = CollectInputs({dir_ / "in" / "walk.json"});
  const CommandStatus s = RunRetarget(inputs, dir_ / "r", run);
  EXPECT_EQ(s.exit_code(), 0);
  const RetargetedMotion m = LoadRetargetedMotion(dir_ / "r" / "walk.json");
  EXPECT_EQ(m.num_frames(), 120);
  const std::string trace = ReadFile(dir_ / "r" / "traces" / "walk.csv");
  // Header, the initial state and one row per iteration.
  EXPECT_EQ(std::count(trace.begin(), trace.end(), '\n'), 42);
}

TEST_F(PipelineTest, MissingRobotModelFailsBeforeProcessing) {
  RunOptions run = Options();
  run.config.robot_model = dir_ / "nope.json";
  EXPECT_THROW(RunRetarget(CollectInputs({dir_ / "in"}), dir_ / "r", run),
               std::invalid_argument);
  EXPECT_FALSE(fs::exists(dir_ / "r"));
}

TEST_F(PipelineTest, MetricsSelfRetargetAndUnpaired) {
  fs::create_directories(dir_ / "src");
  fs::create_directories(dir_ / "self");
  synth::MotionParams p;
  const RetargetedMotion truth = synth::GenerateMotion(p);
  SaveSourceMotion(synth::RenderSource(synth::TestHumanoid(), truth), dir_ / "src" / "stand.json");
  SaveRetargetedMotion(truth, dir_ / "self" / "stand.json");
  CommandStatus s = RunMetrics(dir_ / "src", {dir_ / "self"}, dir_ / "m", Options());
  EXPECT_EQ(s.exit_code(), 0);
  const std::string csv = ReadFile(dir_ / "m" / "metrics.csv");
  EXPECT_NE(csv.find("self,stand,100,100,100,100,100,"), std::string::npos) << csv;
  EXPECT_TRUE(fs::exists(dir_ / "m" / "metrics_summary.csv"));

  SaveRetargetedMotion(truth, dir_ / "self" / "orphan.json");
  s = RunMetrics(dir_ / "src", {dir_ / "self"}, dir_ / "m2", Options());
  EXPECT_EQ(s.exit_code(), 1);
  ASSERT_EQ(s.errors.size(), 1u);
  EXPECT_NE(s.errors[0].find("orphan"), std::string::npos);
}

TEST_F(PipelineTest, PipelineRerunIsByteIdentical) {
  const auto inputs = CollectInputs({dir_ / "in"});
  RunOptions run = Options();
  run.config.workers = 2;
  ASSERT_EQ(RunPipeline(inputs, dir_ / "a", run).exit_code(), 0);
  ASSERT_EQ(RunPipeline(inputs, dir_ / "b", run).exit_code(), 0);
  const auto a = Tree(dir_ / "a");
  EXPECT_EQ(a, Tree(dir_ / "b"));
  EXPECT_TRUE(a.count("config.json"));
  EXPECT_TRUE(a.count("curate/curation_report.json"));
  EXPECT_TRUE(a.count("retarget/walk_c000.json"));
  EXPECT_TRUE(a.count("metrics/metrics.json"));
  const nlohmann::json metrics = ReadJsonFile(dir_ / "a" / "metrics" / "metrics.json");
  EXPECT_EQ(metrics["runs"][0]["clips"].size(), 2u);
}

// CLI behaviour through the built executable.
class CliTest : public PipelineTest {
 protected:
  int Run(const std::string& args) {
    const std::string cmd = std::string(GROUNDWORK_CLI_PATH) + " " + args + " >" +
                            (dir_ / "stdout.txt").string() + " 2>" +
                            (dir_ / "stderr.txt").string();
    const int rc = std::system(cmd.c_str());
    stdout_ = ReadFile(dir_ / "stdout.txt");
    stderr_ = ReadFile(dir_ / "stderr.txt");
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  }
  std::string P(const std::string& rel) const { return (dir_ / rel).string(); }

  std::string stdout_;
  std::string stderr_;
};

TEST_F(CliTest, FlagsOverrideConfigFileOverridesDefaults) {
  ASSERT_EQ(Run("config --config " + P("config.json") + " --seed 11 --mode ik"), 0);
  const nlohmann::json doc = nlohmann::json::parse(stdout_);
  EXPECT_EQ(doc["optimizer"]["iterations"], 40);
  EXPECT_EQ(doc["optimizer"]["seed"], 11);
  EXPECT_EQ(doc["optimizer"]["mode"], "IK");
}

TEST_F(CliTest, EnvironmentVariableSuppliesDefaultConfig) {
  ::setenv(kConfigEnvVar, P("config.json").c_str(), 1);
  const int rc = Run("config");
  ::unsetenv(kConfigEnvVar);
  ASSERT_EQ(rc, 0);
  EXPECT_EQ(nlohmann::json::parse(stdout_)["optimizer"]["iterations"], 40);
}

TEST_F(CliTest, CorruptInputNamesFileAndFails) {
  WriteTextFile("not json", dir_ / "in" / "bad.json");
  EXPECT_NE(Run("curate " + P("in") + " --config " + P("config.json") + " -o " + P("out")), 0);
  EXPECT_NE(stderr_.find("bad.json"), std::string::npos);
  EXPECT_TRUE(stdout_.empty());
  EXPECT_TRUE(fs::exists(dir_ / "out" / "clips" / "walk_c000.json"));
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Run("curate " + P("in") + " --config " + P("config.json") + " -o " + P("c")), 0);
  EXPECT_NE(Run("retarget " + P("in") + " -o " + P("r")), 0);
  EXPECT_FALSE(fs::exists(dir_ / "r"));
  EXPECT_NE(Run("retarget " + P("in") + " --config " + P("config.json") + " --mode warp -o " +
                P("r")),
            0);
  EXPECT_NE(stderr_.find("warp"), std::string::npos);
  EXPECT_NE(Run("pipeline " + P("missing") + " --config " + P("config.json") + " -o " + P("p")),
            0);
  EXPECT_EQ(Run("pipeline " + P("in") + " --config " + P("config.json") + " --dry-run -o " +
                P("p")),
            0);
  EXPECT_FALSE(fs::exists(dir_ / "p"));
}

TEST_F(CliTest, RetargetModesGiveDistinctOutputs) {
  const std::string common = P("in/walk.json") + " --config " + P("config.json");
  ASSERT_EQ(Run("retarget " + common + " --mode sink -o " + P("sink")), 0);
  ASSERT_EQ(Run("retarget " + common + " --mode physink -o " + P("phys")), 0);
  EXPECT_NE(ReadFile(dir_ / "sink" / "walk.json"), ReadFile(dir_ / "phys" / "walk.json"));
  ASSERT_EQ(Run("metrics " + P("in") + " " + P("sink") + " " + P("phys") + " --config " +
                P("config.json") + " -o " + P("m")),
            1);  // squat has no retargeted partner
  const std::string summary = ReadFile(dir_ / "m" / "metrics_summary.csv");
  EXPECT_NE(summary.find("\nsink,1,"), std::string::npos) << summary;
  EXPECT_NE(summary.find("\nphys,1,"), std::string::npos) << summary;
}

}  // namespace
}  // namespace groundwork
