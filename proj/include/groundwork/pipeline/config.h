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

#ifndef GROUNDWORK_PIPELINE_CONFIG_H_
#define GROUNDWORK_PIPELINE_CONFIG_H_

#include <filesystem>
#include <string>

#include "json.hpp"
#include "groundwork/curation/curate.h"
#include "groundwork/retarget/config.h"
#include "groundwork/retarget/retarget.h"

namespace groundwork {

// Environment variable naming the config file used when --config is absent.
inline constexpr char kConfigEnvVar[] = "GROUNDWORK_CONFIG";

// Every tunable of the curate -> retarget -> metrics chain. Precedence:
// built-in defaults, then the config file, then command-line flags.
struct PipelineConfig {
  CurationConfig curation;
  TargetOptions target;
  OptimizerConfig optimizer;
  std::filesystem::path robot_model;
  std::filesystem::path correspondence;
  int workers = 0;  // 0 = hardware concurrency

  // Checks nested invariants. With `check_files`, the robot model and
  // correspondence paths must name existing files.
  void Validate(bool check_files) const;
};

// Fields absent from `doc` keep the value in `base`. Relative paths resolve
// against `base_dir`. Unknown keys are errors.
PipelineConfig PipelineConfigFromJson(const nlohmann::json& doc,
                                      const std::filesystem::path& base_dir,
                                      PipelineConfig base = {});
nlohmann::json PipelineConfigToJson(const PipelineConfig& config);
PipelineConfig LoadPipelineConfig(const std::filesystem::path& path);

}  // namespace groundwork

#endif  // GROUNDWORK_PIPELINE_CONFIG_H_
