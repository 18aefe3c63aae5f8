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

#ifndef GROUNDWORK_PIPELINE_PIPELINE_H_
#define GROUNDWORK_PIPELINE_PIPELINE_H_

#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "groundwork/pipeline/config.h"

namespace groundwork {

struct RunOptions {
  PipelineConfig config;
  bool dry_run = false;
  std::ostream* log = nullptr;  // progress and per-item errors
};

struct CommandStatus {
  int processed = 0;
  std::vector<std::string> errors;  // "<item>: <message>"
  int exit_code() const { return errors.empty() ? 0 : 1; }
};

// Expands files and directories (their *.json entries, non-recursive) into a
// sorted file list. Throws std::invalid_argument on a missing path or when
// two inputs share a stem.
std::vector<std::filesystem::path> CollectInputs(
    const std::vector<std::filesystem::path>& args);

// Runs fn(0..n-1) on at most `workers` threads (0 = hardware concurrency).
void ParallelFor(int n, int workers, const std::function<void(int)>& fn);

// Writes <out>/clips/<stem>_cNNN.json per kept clip and
// <out>/curation_report.{json,csv}.
CommandStatus RunCurate(const std::vector<std::filesystem::path>& inputs,
                        const std::filesystem::path& out, const RunOptions& run);

// Writes <out>/<stem>.json and <out>/traces/<stem>.csv per input clip.
CommandStatus RunRetarget(const std::vector<std::filesystem::path>& inputs,
                          const std::filesystem::path& out, const RunOptions& run);

// Pairs every <stem>.json in each retargeted directory with <stem>.json in
// `sources` and writes metrics.{json,csv} and metrics_summary.csv to `out`.
// Each retargeted directory is one run, named by its directory name.
// Unpaired files are errors.
CommandStatus RunMetrics(const std::filesystem::path& sources,
                         const std::vector<std::filesystem::path>& retargeted,
                         const std::filesystem::path& out, const RunOptions& run);

// curate -> retarget -> metrics under <out>/curate, <out>/retarget and
// <out>/metrics, plus the effective config as <out>/config.json. A failing
// file stops only its own chain.
CommandStatus RunPipeline(const std::vector<std::filesystem::path>& inputs,
                          const std::filesystem::path& out, const RunOptions& run);

}  // namespace groundwork

#endif  // GROUNDWORK_PIPELINE_PIPELINE_H_
