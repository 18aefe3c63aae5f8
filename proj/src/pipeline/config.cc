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

#include "groundwork/pipeline/config.h"

#include <set>
#include <stdexcept>
#include <string>

#include "groundwork/core/io.h"

namespace groundwork {
namespace {

using nlohmann::json;

// Typed access to one JSON object that rejects keys it was never asked for.
class Section {
 public:
  Section(const json& doc, std::string where) : doc_(doc), where_(std::move(where)) {
    if (!doc_.is_object()) throw FormatError(where_ + ": expected an object");
  }

  template <typename T>
  void Get(const char* key, T* out) {
    seen_.insert(key);
    const auto it = doc_.find(key);
    if (it == doc_.end()) return;
    try {
      *out = it->template get<T>();
    } catch (const json::exception&) {
      throw FormatError(where_ + "." + key + ": wrong type");
    }
  }

  // Nested object, or nullptr when absent.
  const json* Child(const char* key) {
    seen_.insert(key);
    const auto it = doc_.find(key);
    return it == doc_.end() ? nullptr : &*it;
  }

  void Finish() const {
    for (const auto& [key, value] : doc_.items()) {
      if (!seen_.count(key)) throw FormatError(where_ + ": unknown key \"" + key + "\"");
    }
  }

  const std::string& where() const { return where_; }

 private:
  const json& doc_;
  std::string where_;
  std::set<std::string> seen_;
};

json WeightsToJson(const LossWeights& w) {
  return {{"global_match", w.global_match}, {"local_match", w.local_match},
          {"smooth", w.smooth},             {"feasibility", w.feasibility},
          {"ground", w.ground},             {"skate", w.skate}};
}

}  // namespace

void PipelineConfig::Validate(bool check_files) const {
  curation.filter.Validate();
  curation.thresholds.Validate();
  optimizer.Validate();
  if (!(curation.ground_tolerance > 0.0)) {
    throw std::invalid_argument("contact.ground_tolerance must be > 0");
  }
  if (!(curation.contact_ramp_top > 0.0)) {
    throw std::invalid_argument("contact.ramp_top must be > 0");
  }
  if (curation.joints.support.empty()) {
    throw std::invalid_argument("joints.support must not be empty");
  }
  if (workers < 0) throw std::invalid_argument("workers must be >= 0");
  if (!check_files) return;
  for (const auto* path : {&robot_model, &correspondence}) {
    if (path->empty()) {
      throw std::invalid_argument(path == &robot_model ? "robot_model path not set"
                                                       : "correspondence path not set");
    }
    if (!std::filesystem::is_regular_file(*path)) {
      throw std::invalid_argument("file not found: " + path->string());
    }
  }
}

PipelineConfig PipelineConfigFromJson(const json& doc,
                                      const std::filesystem::path& base_dir,
                                      PipelineConfig cfg) {
  Section root(doc, "config");
  if (const json* f = root.Child("filter")) {
    Section s(*f, "config.filter");
    s.Get("order", &cfg.curation.filter.order);
    s.Get("cutoff_root_hz", &cfg.curation.filter.cutoff_root);
    s.Get("cutoff_pose_hz", &cfg.curation.filter.cutoff_pose);
    s.Get("fs_hz", &cfg.curation.filter.fs);
    s.Get("root_joint", &cfg.curation.filter.root_joint);
    s.Finish();
  }
  if (const json* t = root.Child("thresholds")) {
    FilterThresholds& th = cfg.curation.thresholds;
    Section s(*t, "config.thresholds");
    s.Get("max_root_jerk", &th.max_root_jerk);
    s.Get("min_contact_score", &th.min_contact_score);
    s.Get("min_pelvis_height", &th.min_pelvis_height);
    s.Get("max_pelvis_height", &th.max_pelvis_height);
    s.Get("max_pelvis_bos_distance", &th.max_pelvis_bos_dist);
    s.Get("max_spine_bos_distance", &th.max_spine_bos_dist);
    s.Get("clip_seconds", &th.clip_seconds);
    s.Finish();
  }
  if (const json* j = root.Child("joints")) {
    Section s(*j, "config.joints");
    s.Get("root", &cfg.curation.joints.root);
    s.Get("spine", &cfg.curation.joints.spine);
    s.Get("support", &cfg.curation.joints.support);
    s.Get("left_hip", &cfg.target.left_hip);
    s.Get("right_hip", &cfg.target.right_hip);
    s.Finish();
  }
  if (const json* c = root.Child("contact")) {
    Section s(*c, "config.contact");
    s.Get("ground_tolerance", &cfg.curation.ground_tolerance);
    s.Get("ramp_top", &cfg.curation.contact_ramp_top);
    s.Finish();
  }
  cfg.target.ground_tolerance = cfg.curation.ground_tolerance;
  cfg.target.contact_ramp_top = cfg.curation.contact_ramp_top;
  if (const json* o = root.Child("optimizer")) {
    OptimizerConfig& opt = cfg.optimizer;
    Section s(*o, "config.optimizer");
    std::string mode;
    s.Get("mode", &mode);
    if (!mode.empty() && !ParseMode(mode, &opt.mode)) {
      throw FormatError("config.optimizer.mode: unknown mode \"" + mode + "\"");
    }
    s.Get("iterations", &opt.iterations);
    s.Get("step_size", &opt.step_size);
    s.Get("final_step_fraction", &opt.final_step_fraction);
    s.Get("warmup_fraction", &opt.warmup_fraction);
    s.Get("limit_margin", &opt.limit_margin);
    s.Get("seed", &opt.seed);
    s.Get("init_noise", &opt.init_noise);
    if (const json* w = s.Child("weights")) {
      Section ws(*w, "config.optimizer.weights");
      ws.Get("global_match", &opt.weights.global_match);
      ws.Get("local_match", &opt.weights.local_match);
      ws.Get("smooth", &opt.weights.smooth);
      ws.Get("feasibility", &opt.weights.feasibility);
      ws.Get("ground", &opt.weights.ground);
      ws.Get("skate", &opt.weights.skate);
      ws.Finish();
    }
    s.Finish();
  }
  std::string path;
  root.Get("robot_model", &path);
  if (!path.empty()) cfg.robot_model = base_dir / path;
  path.clear();
  root.Get("correspondence", &path);
  if (!path.empty()) cfg.correspondence = base_dir / path;
  root.Get("workers", &cfg.workers);
  root.Finish();
  try {
    cfg.Validate(false);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  return cfg;
}

json PipelineConfigToJson(const PipelineConfig& cfg) {
  const CurationConfig& c = cfg.curation;
  const OptimizerConfig& o = cfg.optimizer;
  return {
      {"filter",
       {{"order", c.filter.order},
        {"cutoff_root_hz", c.filter.cutoff_root},
        {"cutoff_pose_hz", c.filter.cutoff_pose},
        {"fs_hz", c.filter.fs},
        {"root_joint", c.filter.root_joint}}},
      {"thresholds",
       {{"max_root_jerk", c.thresholds.max_root_jerk},
        {"min_contact_score", c.thresholds.min_contact_score},
        {"min_pelvis_height", c.thresholds.min_pelvis_height},
        {"max_pelvis_height", c.thresholds.max_pelvis_height},
        {"max_pelvis_bos_distance", c.thresholds.max_pelvis_bos_dist},
        {"max_spine_bos_distance", c.thresholds.max_spine_bos_dist},
        {"clip_seconds", c.thresholds.clip_seconds}}},
      {"joints",
       {{"root", c.joints.root},
        {"spine", c.joints.spine},
        {"support", c.joints.support},
        {"left_hip", cfg.target.left_hip},
        {"right_hip", cfg.target.right_hip}}},
      {"contact",
       {{"ground_tolerance", c.ground_tolerance}, {"ramp_top", c.contact_ramp_top}}},
      {"optimizer",
       {{"mode", std::string(ModeName(o.mode))},
        {"iterations", o.iterations},
        {"step_size", o.step_size},
        {"final_step_fraction", o.final_step_fraction},
        {"warmup_fraction", o.warmup_fraction},
        {"limit_margin", o.limit_margin},
        {"seed", o.seed},
        {"init_noise", o.init_noise},
        {"weights", WeightsToJson(o.weights)}}},
      {"robot_model", cfg.robot_model.generic_string()},
      {"correspondence", cfg.correspondence.generic_string()},
      {"workers", cfg.workers}};
}

PipelineConfig LoadPipelineConfig(const std::filesystem::path& path) {
  const json doc = ReadJsonFile(path);
  try {
    return PipelineConfigFromJson(doc, path.parent_path());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace groundwork
