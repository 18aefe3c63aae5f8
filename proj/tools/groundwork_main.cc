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

// Command-line front end: curate, retarget, metrics, pipeline.

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "groundwork/pipeline/config.h"
#include "groundwork/pipeline/pipeline.h"

namespace fs = std::filesystem;

namespace {

struct SharedFlags {
  std::string config;
  std::string output;
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
  std::string mode;
  bool dry_run = false;
};

void AddSharedFlags(CLI::App* cmd, SharedFlags* f, bool needs_output) {
  cmd->add_option("--config", f->config,
                  "Pipeline config JSON (default: $GROUNDWORK_CONFIG)");
  auto* out = cmd->add_option("--output,-o", f->output, "Output directory");
  if (needs_output) out->required();
  cmd->add_option("--workers", f->workers, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", f->seed, "Optimizer seed");
  cmd->add_option("--mode", f->mode,
                  "ik, sink, +feasibility, +ground or physink");
  cmd->add_flag("--dry-run", f->dry_run, "Validate config and inputs, write nothing");
}

// Defaults, then the config file, then flags.
groundwork::RunOptions ResolveOptions(const SharedFlags& f) {
  groundwork::RunOptions run;
  std::string path = f.config;
  if (path.empty()) {
    if (const char* env = std::getenv(groundwork::kConfigEnvVar)) path = env;
  }
  if (!path.empty()) run.config = groundwork::LoadPipelineConfig(path);
  if (f.workers) run.config.workers = *f.workers;
  if (f.seed) run.config.optimizer.seed = *f.seed;
  if (!f.mode.empty() &&
      !groundwork::ParseMode(f.mode, &run.config.optimizer.mode)) {
    throw std::invalid_argument("unknown mode \"" + f.mode + "\"");
  }
  run.config.Validate(false);
  run.dry_run = f.dry_run;
  run.log = &std::cerr;
  return run;
}

std::vector<fs::path> ToPaths(const std::vector<std::string>& args) {
  return {args.begin(), args.end()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Motion curation and physics-constrained retargeting"};
  app.require_subcommand(1);
  SharedFlags flags;
  std::vector<std::string> inputs;
  std::string sources;
  std::vector<std::string> retargeted;

  auto* curate = app.add_subcommand("curate", "Smooth, ground, chunk and filter source motions");
  curate->add_option("inputs", inputs, "Source motion files or directories")->required();
  AddSharedFlags(curate, &flags, true);

  auto* retarget = app.add_subcommand("retarget", "Retarget curated clips onto the robot");
  retarget->add_option("inputs", inputs, "Clip files or directories")->required();
  AddSharedFlags(retarget, &flags, true);

  auto* metrics = app.add_subcommand("metrics", "Score retargeted motions against their sources");
  metrics->add_option("sources", sources, "Directory of source clips")->required();
  metrics->add_option("retargeted", retargeted,
                      "Directories of retargeted motions, one run each")
      ->required();
  AddSharedFlags(metrics, &flags, true);

  auto* pipeline = app.add_subcommand("pipeline", "curate, retarget and metrics in sequence");
  pipeline->add_option("inputs", inputs, "Source motion files or directories")->required();
  AddSharedFlags(pipeline, &flags, true);

  auto* show = app.add_subcommand("config", "Print the effective config as JSON");
  AddSharedFlags(show, &flags, false);

  CLI11_PARSE(app, argc, argv);

  groundwork::RunOptions run;
  try {
    run = ResolveOptions(flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  groundwork::CommandStatus status;
  try {
    const fs::path out = flags.output;
    if (show->parsed()) {
      std::cout << groundwork::PipelineConfigToJson(run.config).dump(2) << '\n';
      return 0;
    }
    if (metrics->parsed()) {
      status = groundwork::RunMetrics(sources, ToPaths(retargeted), out, run);
    } else {
      const std::vector<fs::path> files = groundwork::CollectInputs(ToPaths(inputs));
      if (curate->parsed()) status = groundwork::RunCurate(files, out, run);
      if (retarget->parsed()) status = groundwork::RunRetarget(files, out, run);
      if (pipeline->parsed()) status = groundwork::RunPipeline(files, out, run);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  if (run.dry_run && status.errors.empty()) std::cerr << "dry run: ok\n";
  return status.exit_code();
}
