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

#include "groundwork/curation/curate.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "groundwork/core/io.h"
#include "groundwork/core/numerics.h"
#include "groundwork/curation/support.h"

namespace groundwork {

namespace {

int RequireJoint(const SourceMotion& motion, const std::string& name) {
  const int index = motion.JointIndex(name);
  if (index < 0) {
    throw std::invalid_argument("joint \"" + name + "\" not present in motion");
  }
  return index;
}

}  // namespace

void FilterThresholds::Validate() const {
  for (double v : {max_root_jerk, min_contact_score, min_pelvis_height,
                   max_pelvis_height, max_pelvis_bos_dist, max_spine_bos_dist,
                   clip_seconds}) {
    if (!(v > 0.0)) throw std::invalid_argument("filter thresholds must be positive");
  }
  if (!(min_pelvis_height < max_pelvis_height)) {
    throw std::invalid_argument("min_pelvis_height must be below max_pelvis_height");
  }
}

double RootJerkMax(const SourceMotion& motion, const std::string& root_joint) {
  const int root = RequireJoint(motion, root_joint);
  if (motion.num_frames() < 4) {
    throw std::invalid_argument("root jerk needs at least 4 frames");
  }
  std::vector<Vec3> track;
  track.reserve(motion.num_frames());
  for (const auto& frame : motion.joints) track.push_back(frame[root]);
  double worst = 0.0;
  for (const Vec3& j : FiniteDifference(track, 3, motion.fps)) {
    worst = std::max(worst, j.norm());
  }
  return worst;
}

int ClipLength(double fps, double clip_seconds) {
  if (!(clip_seconds > 0.0)) throw std::invalid_argument("clip length must be > 0");
  return static_cast<int>(std::lround(clip_seconds * fps));
}

std::vector<SourceMotion> Chunk(const SourceMotion& motion, double clip_seconds) {
  const int length = ClipLength(motion.fps, clip_seconds);
  std::vector<SourceMotion> clips;
  if (length <= 0) return clips;
  for (int start = 0; start + length <= motion.num_frames(); start += length) {
    SourceMotion clip;
    clip.fps = motion.fps;
    clip.joint_names = motion.joint_names;
    clip.joints.assign(motion.joints.begin() + start,
                       motion.joints.begin() + start + length);
    for (int r = 0; r < kNumFootRegions; ++r) {
      clip.markers[r].assign(motion.markers[r].begin() + start,
                             motion.markers[r].begin() + start + length);
    }
    clips.push_back(std::move(clip));
  }
  return clips;
}

std::string CriterionName(Criterion c) {
  switch (c) {
    case Criterion::kRootJerk:
      return "root jerk";
    case Criterion::kFootContactScore:
      return "foot contact score";
    case Criterion::kMinPelvisHeight:
      return "min pelvis height";
    case Criterion::kMaxPelvisHeight:
      return "max pelvis height";
    case Criterion::kPelvisSupportDistance:
      return "pelvis distance to support";
    case Criterion::kSpineSupportDistance:
      return "spine distance to support";
  }
  return "unknown";
}

std::string FilterFailure::Describe() const {
  return CriterionName(criterion) + "=" + FormatNumber(measured) + " (limit " +
         FormatNumber(threshold) + ")";
}

ClipVerdict FilterClip(const SourceMotion& clip, const FilterThresholds& th,
                       const CurationJoints& joints, double contact_ramp_top) {
  const int pelvis = RequireJoint(clip, joints.root);
  const int spine = RequireJoint(clip, joints.spine);
  std::vector<int> support;
  for (const std::string& name : joints.support) {
    support.push_back(RequireJoint(clip, name));
  }
  if (support.empty()) throw std::invalid_argument("no support joints configured");

  ClipVerdict verdict;
  ClipMeasurements& m = verdict.measured;
  m.root_jerk = RootJerkMax(clip, joints.root);
  m.contact_score = FootContactScore(ContactScores(clip, contact_ramp_top));
  m.min_pelvis_z = std::numeric_limits<double>::infinity();
  m.max_pelvis_z = -std::numeric_limits<double>::infinity();
  std::vector<Vec3> feet(support.size());
  for (int t = 0; t < clip.num_frames(); ++t) {
    const auto& frame = clip.joints[t];
    m.min_pelvis_z = std::min(m.min_pelvis_z, frame[pelvis].z());
    m.max_pelvis_z = std::max(m.max_pelvis_z, frame[pelvis].z());
    for (size_t k = 0; k < support.size(); ++k) feet[k] = frame[support[k]];
    const SupportPolygon hull = BaseOfSupport(feet);
    m.pelvis_bos = std::max(m.pelvis_bos, DistanceToSupport(frame[pelvis], hull));
    m.spine_bos = std::max(m.spine_bos, DistanceToSupport(frame[spine], hull));
  }

  auto check = [&](bool ok, Criterion c, double measured, double threshold) {
    if (!ok) verdict.reasons.push_back({c, measured, threshold});
  };
  check(m.root_jerk < th.max_root_jerk, Criterion::kRootJerk, m.root_jerk,
        th.max_root_jerk);
  check(m.contact_score > th.min_contact_score, Criterion::kFootContactScore,
        m.contact_score, th.min_contact_score);
  check(m.min_pelvis_z > th.min_pelvis_height, Criterion::kMinPelvisHeight,
        m.min_pelvis_z, th.min_pelvis_height);
  check(m.max_pelvis_z < th.max_pelvis_height, Criterion::kMaxPelvisHeight,
        m.max_pelvis_z, th.max_pelvis_height);
  check(m.pelvis_bos < th.max_pelvis_bos_dist, Criterion::kPelvisSupportDistance,
        m.pelvis_bos, th.max_pelvis_bos_dist);
  check(m.spine_bos < th.max_spine_bos_dist, Criterion::kSpineSupportDistance,
        m.spine_bos, th.max_spine_bos_dist);
  verdict.pass = verdict.reasons.empty();
  return verdict;
}

int CurationReport::kept() const {
  return static_cast<int>(std::count_if(clips.begin(), clips.end(),
                                        [](const ClipEntry& e) { return e.verdict.pass; }));
}

int CurationReport::discarded() const {
  return static_cast<int>(clips.size()) - kept();
}

double CurationReport::retained_seconds() const {
  if (fps <= 0.0) return 0.0;
  int frames = 0;
  for (const ClipEntry& e : clips) {
    if (e.verdict.pass) frames += e.end_frame - e.start_frame;
  }
  return frames / fps;
}

CurationResult Curate(const SourceMotion& motion, const CurationConfig& config) {
  config.filter.Validate();
  config.thresholds.Validate();
  motion.Validate();

  SourceMotion working = std::abs(motion.fps - config.filter.fs) > 1e-9
                             ? Resample(motion, config.filter.fs)
                             : motion;
  FilterSpec filter = config.filter;
  filter.root_joint = config.joints.root;
  working = SmoothMotion(working, filter);
  const GroundPlane plane = EstimateGroundPlane(working, config.ground_tolerance);
  working = AlignToGround(working, plane);

  CurationResult result;
  CurationReport& report = result.report;
  report.fps = working.fps;
  report.total_frames = working.num_frames();
  report.ground_height = plane.height;
  const int length = ClipLength(working.fps, config.thresholds.clip_seconds);
  std::vector<SourceMotion> clips = Chunk(working, config.thresholds.clip_seconds);
  for (size_t i = 0; i < clips.size(); ++i) {
    ClipEntry entry;
    entry.clip_index = static_cast<int>(i);
    entry.start_frame = static_cast<int>(i) * length;
    entry.end_frame = entry.start_frame + length;
    entry.verdict = FilterClip(clips[i], config.thresholds, config.joints,
                               config.contact_ramp_top);
    if (entry.verdict.pass) result.kept.push_back(std::move(clips[i]));
    report.clips.push_back(std::move(entry));
  }
  return result;
}

nlohmann::json CurationReportToJson(const CurationReport& report) {
  nlohmann::json clips = nlohmann::json::array();
  for (const ClipEntry& e : report.clips) {
    const ClipMeasurements& m = e.verdict.measured;
    nlohmann::json reasons = nlohmann::json::array();
    for (const FilterFailure& f : e.verdict.reasons) {
      reasons.push_back({{"criterion", CriterionName(f.criterion)},
                         {"measured", f.measured},
                         {"threshold", f.threshold}});
    }
    clips.push_back({{"clip_index", e.clip_index},
                     {"start_frame", e.start_frame},
                     {"end_frame", e.end_frame},
                     {"pass", e.verdict.pass},
                     {"root_jerk", m.root_jerk},
                     {"contact_score", m.contact_score},
                     {"min_pelvis_z", m.min_pelvis_z},
                     {"max_pelvis_z", m.max_pelvis_z},
                     {"pelvis_bos", m.pelvis_bos},
                     {"spine_bos", m.spine_bos},
                     {"reasons", std::move(reasons)}});
  }
  return {{"source", report.source},
          {"fps", report.fps},
          {"total_frames", report.total_frames},
          {"ground_height", report.ground_height},
          {"clips", std::move(clips)},
          {"totals",
           {{"kept", report.kept()},
            {"discarded", report.discarded()},
            {"retained_seconds", report.retained_seconds()}}}};
}

std::string CurationCsvHeader() {
  return "source,clip_index,start_frame,end_frame,pass,jerk,contact_score,"
         "min_pelvis_z,max_pelvis_z,pelvis_bos,spine_bos,reasons\n";
}

std::string CurationCsvRows(const CurationReport& report) {
  std::string out;
  for (const ClipEntry& e : report.clips) {
    const ClipMeasurements& m = e.verdict.measured;
    std::string reasons;
    for (const FilterFailure& f : e.verdict.reasons) {
      if (!reasons.empty()) reasons += ";";
      reasons += f.Describe();
    }
    out += report.source + "," + std::to_string(e.clip_index) + "," +
           std::to_string(e.start_frame) + "," + std::to_string(e.end_frame) +
           "," + (e.verdict.pass ? "1" : "0") + "," + FormatNumber(m.root_jerk) +
           "," + FormatNumber(m.contact_score) + "," +
           FormatNumber(m.min_pelvis_z) + "," + FormatNumber(m.max_pelvis_z) +
           "," + FormatNumber(m.pelvis_bos) + "," + FormatNumber(m.spine_bos) +
           ",\"" + reasons + "\"\n";
  }
  return out;
}

}  // namespace groundwork
