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

#include "groundwork/pipeline/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

#include "groundwork/core/io.h"
#include "groundwork/kinematics/correspondence.h"
#include "groundwork/kinematics/forward_kinematics.h"
#include "groundwork/metrics/quality.h"
#include "groundwork/retarget/retarget.h"

namespace groundwork {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Logger {
 public:
  explicit Logger(std::ostream* out) : out_(out) {}
  void Line(const std::string& text) {
    if (!out_) return;
    std::lock_guard<std::mutex> lock(mu_);
    *out_ << text << '\n';
  }

 private:
  std::ostream* out_;
  std::mutex mu_;
};

std::string ClipName(const std::string& stem, int index) {
  char suffix[16];
  std::snprintf(suffix, sizeof(suffix), "_c%03d", index);
  return stem + suffix;
}

void MakeDirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

// Per-item outcome kept in input order.
template <typename T>
struct Slot {
  std::optional<T> value;
  std::string error;
};

template <typename T>
void Collect(const std::vector<fs::path>& items, std::vector<Slot<T>>& slots,
             CommandStatus* status, Logger* log) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (slots[i].value) {
      ++status->processed;
    } else {
      status->errors.push_back(items[i].string() + ": " + slots[i].error);
      log->Line("error: " + status->errors.back());
    }
  }
}

template <typename T, typename Fn>
std::vector<Slot<T>> RunEach(const std::vector<fs::path>& items, int workers, Fn fn) {
  std::vector<Slot<T>> slots(items.size());
  ParallelFor(static_cast<int>(items.size()), workers, [&](int i) {
    try {
      slots[i].value = fn(items[i]);
    } catch (const std::exception& e) {
      slots[i].error = e.what();
    }
  });
  return slots;
}

struct RobotSetup {
  RobotModel robot;
  std::vector<CorrespondenceEntry> entries;
};

RobotSetup LoadRobotSetup(const PipelineConfig& cfg) {
  cfg.Validate(true);
  return {LoadRobotModel(cfg.robot_model),
          LoadCorrespondenceEntries(cfg.correspondence)};
}

}  // namespace

std::vector<fs::path> CollectInputs(const std::vector<fs::path>& args) {
  std::vector<fs::path> files;
  for (const fs::path& arg : args) {
    if (fs::is_directory(arg)) {
      for (const auto& entry : fs::directory_iterator(arg)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
          files.push_back(entry.path());
        }
      }
    } else if (fs::is_regular_file(arg)) {
      files.push_back(arg);
    } else {
      throw std::invalid_argument("input not found: " + arg.string());
    }
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  std::map<std::string, fs::path> stems;
  for (const fs::path& f : files) {
    const auto [it, inserted] = stems.emplace(f.stem().string(), f);
    if (!inserted) {
      throw std::invalid_argument("inputs share the stem \"" + it->first +
                                  "\": " + it->second.string() + ", " + f.string());
    }
  }
  return files;
}

void ParallelFor(int n, int workers, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, n);
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

CommandStatus RunCurate(const std::vector<fs::path>& inputs, const fs::path& out,
                        const RunOptions& run) {
  const PipelineConfig& cfg = run.config;
  cfg.Validate(false);
  Logger log(run.log);
  CommandStatus status;

  if (run.dry_run) {
    auto slots = RunEach<int>(inputs, cfg.workers, [](const fs::path& path) {
      LoadSourceMotion(path);
      return 0;
    });
    Collect(inputs, slots, &status, &log);
    return status;
  }

  auto slots = RunEach<CurationResult>(inputs, cfg.workers, [&](const fs::path& path) {
    CurationResult result = Curate(LoadSourceMotion(path), cfg.curation);
    result.report.source = path.filename().string();
    return result;
  });
  Collect(inputs, slots, &status, &log);

  MakeDirs(out / "clips");
  json reports = json::array();
  std::string csv = CurationCsvHeader();
  int kept = 0;
  int discarded = 0;
  double retained = 0.0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (!slots[i].value) continue;
    const CurationResult& result = *slots[i].value;
    const std::string stem = inputs[i].stem().string();
    std::size_t k = 0;
    for (const ClipEntry& clip : result.report.clips) {
      if (!clip.verdict.pass) continue;
      SaveSourceMotion(result.kept.at(k++),
                       out / "clips" / (ClipName(stem, clip.clip_index) + ".json"));
    }
    reports.push_back(CurationReportToJson(result.report));
    csv += CurationCsvRows(result.report);
    kept += result.report.kept();
    discarded += result.report.discarded();
    retained += result.report.retained_seconds();
    log.Line("curate: " + inputs[i].filename().string() + ": kept " +
             std::to_string(result.report.kept()) + " of " +
             std::to_string(result.report.clips.size()) + " clips");
  }
  json doc = {{"inputs", reports},
              {"totals",
               {{"kept", kept}, {"discarded", discarded}, {"retained_seconds", retained}}}};
  WriteJsonFile(doc, out / "curation_report.json");
  WriteTextFile(csv, out / "curation_report.csv");
  return status;
}

CommandStatus RunRetarget(const std::vector<fs::path>& inputs, const fs::path& out,
                          const RunOptions& run) {
  const PipelineConfig& cfg = run.config;
  const RobotSetup setup = LoadRobotSetup(cfg);
  Logger log(run.log);
  CommandStatus status;

  if (run.dry_run) {
    auto slots = RunEach<int>(inputs, cfg.workers, [&](const fs::path& path) {
      const SourceMotion source = LoadSourceMotion(path);
      BuildCorrespondence(setup.entries, setup.robot, source.joint_names);
      return 0;
    });
    Collect(inputs, slots, &status, &log);
    return status;
  }

  MakeDirs(out / "traces");
  auto slots = RunEach<int>(inputs, cfg.workers, [&](const fs::path& path) {
    const SourceMotion source = LoadSourceMotion(path);
    const JointCorrespondence corr =
        BuildCorrespondence(setup.entries, setup.robot, source.joint_names);
    const RetargetResult result =
        Retarget(source, setup.robot, corr, cfg.optimizer, cfg.target);
    const std::string stem = path.stem().string();
    SaveRetargetedMotion(result.motion, out / (stem + ".json"));
    WriteTextFile(TraceCsv(result.trace), out / "traces" / (stem + ".csv"));
    log.Line("retarget: " + path.filename().string() + ": " +
             std::string(ModeName(cfg.optimizer.mode)) + " loss " +
             std::to_string(result.trace[result.best_iteration].loss.total));
    return 0;
  });
  Collect(inputs, slots, &status, &log);
  return status;
}

CommandStatus RunMetrics(const fs::path& sources, const std::vector<fs::path>& retargeted,
                         const fs::path& out, const RunOptions& run) {
  const PipelineConfig& cfg = run.config;
  const RobotSetup setup = LoadRobotSetup(cfg);
  Logger log(run.log);
  CommandStatus status;

  std::map<std::string, fs::path> source_by_stem;
  for (const fs::path& f : CollectInputs({sources})) source_by_stem[f.stem().string()] = f;

  struct Run {
    std::string name;
    std::vector<fs::path> motions;
  };
  std::vector<Run> runs;
  std::set<std::string> run_names;
  for (const fs::path& dir : retargeted) {
    Run r;
    r.name = fs::path(dir).lexically_normal().filename().string();
    if (r.name.empty()) r.name = fs::path(dir).lexically_normal().parent_path().filename().string();
    if (!run_names.insert(r.name).second) {
      throw std::invalid_argument("two retargeted directories named \"" + r.name + "\"");
    }
    std::set<std::string> matched;
    for (const fs::path& f : CollectInputs({dir})) {
      const std::string stem = f.stem().string();
      if (source_by_stem.count(stem)) {
        r.motions.push_back(f);
        matched.insert(stem);
      } else {
        status.errors.push_back(f.string() + ": unpaired (no source " + stem + ".json)");
      }
    }
    for (const auto& [stem, path] : source_by_stem) {
      if (!matched.count(stem)) {
        status.errors.push_back(path.string() + ": unpaired (no retargeted " + stem +
                                ".json in " + dir.string() + ")");
      }
    }
    runs.push_back(std::move(r));
  }
  for (const std::string& e : status.errors) log.Line("error: " + e);
  if (run.dry_run) return status;

  MakeDirs(out);
  json run_docs = json::array();
  std::string csv = "run," + QualityCsvHeader();
  std::string summary_csv =
      "run,clips,motion_fidelity_pct,joint_feasibility_pct,non_floating_pct,"
      "non_penetration_pct,non_skating_pct\n";
  for (const Run& r : runs) {
    auto slots = RunEach<QualityReport>(r.motions, cfg.workers, [&](const fs::path& path) {
      const RetargetedMotion motion = LoadRetargetedMotion(path);
      motion.ValidateAgainst(setup.robot);
      const SourceMotion source = LoadSourceMotion(source_by_stem.at(path.stem().string()));
      const JointCorrespondence corr =
          BuildCorrespondence(setup.entries, setup.robot, source.joint_names);
      const RetargetProblem problem =
          PrepareProblem(source, setup.robot, corr, RetargetMode::kSINK, cfg.target);
      if (motion.num_frames() != problem.target.num_frames()) {
        throw FormatError("frame count " + std::to_string(motion.num_frames()) +
                          " differs from source " +
                          std::to_string(problem.target.num_frames()));
      }
      return MakeQualityReport(motion, problem.target, problem.corr, setup.robot,
                               problem.contacts, cfg.optimizer.limit_margin);
    });
    Collect(r.motions, slots, &status, &log);
    json clips = json::array();
    std::vector<QualityReport> reports;
    for (std::size_t i = 0; i < r.motions.size(); ++i) {
      if (!slots[i].value) continue;
      const std::string stem = r.motions[i].stem().string();
      json row = QualityReportToJson(*slots[i].value);
      row["clip"] = stem;
      clips.push_back(std::move(row));
      csv += r.name + "," + QualityCsvRow(stem, *slots[i].value);
      reports.push_back(*slots[i].value);
    }
    const CorpusSummary summary = Summarize(reports);
    run_docs.push_back({{"run", r.name}, {"clips", clips},
                        {"summary", CorpusSummaryToJson(summary)}});
    auto cell = [](const MetricSummary& m) {
      return m.mean ? FormatNumber(*m.mean) : std::string();
    };
    summary_csv += r.name + "," + std::to_string(reports.size()) + "," +
                   cell(summary.motion_fidelity) + "," + cell(summary.joint_feasibility) +
                   "," + cell(summary.non_floating) + "," + cell(summary.non_penetration) +
                   "," + cell(summary.non_skating) + "\n";
  }
  WriteJsonFile({{"runs", run_docs}}, out / "metrics.json");
  WriteTextFile(csv, out / "metrics.csv");
  WriteTextFile(summary_csv, out / "metrics_summary.csv");
  return status;
}

CommandStatus RunPipeline(const std::vector<fs::path>& inputs, const fs::path& out,
                          const RunOptions& run) {
  const RobotSetup setup = LoadRobotSetup(run.config);
  Logger log(run.log);
  if (run.dry_run) {
    CommandStatus status = RunCurate(inputs, out / "curate", run);
    for (const fs::path& path : inputs) {
      try {
        BuildCorrespondence(setup.entries, setup.robot, LoadSourceMotion(path).joint_names);
      } catch (const std::exception& e) {
        status.errors.push_back(path.string() + ": " + e.what());
        log.Line("error: " + status.errors.back());
      }
    }
    return status;
  }

  MakeDirs(out);
  WriteJsonFile(PipelineConfigToJson(run.config), out / "config.json");
  CommandStatus status = RunCurate(inputs, out / "curate", run);
  const fs::path clips = out / "curate" / "clips";
  const std::vector<fs::path> kept = CollectInputs({clips});
  const CommandStatus retarget = RunRetarget(kept, out / "retarget", run);
  status.errors.insert(status.errors.end(), retarget.errors.begin(), retarget.errors.end());

  // Metrics only over clips that retargeted successfully.
  std::set<std::string> failed;
  for (const std::string& e : retarget.errors) failed.insert(e.substr(0, e.find(": ")));
  RunOptions metrics_run = run;
  metrics_run.log = nullptr;
  const fs::path paired = out / "retarget";
  CommandStatus metrics;
  if (failed.empty()) {
    metrics = RunMetrics(clips, {paired}, out / "metrics", metrics_run);
  } else {
    // Stage only the successfully retargeted sources so pairing stays strict.
    const fs::path staged = out / "metrics" / "sources";
    MakeDirs(staged);
    for (const fs::path& clip : kept) {
      if (!failed.count(clip.string())) {
        fs::copy_file(clip, staged / clip.filename(), fs::copy_options::overwrite_existing);
      }
    }
    metrics = RunMetrics(staged, {paired}, out / "metrics", metrics_run);
  }
  status.errors.insert(status.errors.end(), metrics.errors.begin(), metrics.errors.end());
  status.processed = static_cast<int>(inputs.size());
  log.Line("pipeline: " + std::to_string(kept.size()) + " clips retargeted, " +
           std::to_string(status.errors.size()) + " errors");
  for (const std::string& e : status.errors) log.Line("  failed: " + e);
  return status;
}

}  // namespace groundwork
