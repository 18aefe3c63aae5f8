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

#ifndef GROUNDWORK_CURATION_CURATE_H_
#define GROUNDWORK_CURATION_CURATE_H_

#include <string>
#include <vector>

#include "json.hpp"

#include "groundwork/core/types.h"
#include "groundwork/curation/ground.h"
#include "groundwork/signal/butterworth.h"

namespace groundwork {

struct FilterThresholds {
  double max_root_jerk = 50.0;       // m/s^3
  double min_contact_score = 0.6;
  double min_pelvis_height = 0.6;    // m
  double max_pelvis_height = 1.5;    // m
  double max_pelvis_bos_dist = 0.06; // m
  double max_spine_bos_dist = 0.11;  // m
  double clip_seconds = 4.0;         // s

  void Validate() const;
};

// Source joints the filters look at.
struct CurationJoints {
  std::string root = "pelvis";
  std::string spine = "spine1";
  std::vector<std::string> support = {"left_foot", "right_foot", "left_ankle",
                                      "right_ankle"};
};

struct CurationConfig {
  FilterSpec filter;
  FilterThresholds thresholds;
  CurationJoints joints;
  double ground_tolerance = kDefaultGroundTolerance;  // m
  double contact_ramp_top = 0.025;                    // m
};

// Largest norm of the third forward difference of the root track, in m/s^3.
double RootJerkMax(const SourceMotion& motion, const std::string& root_joint);

// Consecutive, non-overlapping clips of round(clip_seconds * fps) frames.
// A shorter remainder is dropped.
std::vector<SourceMotion> Chunk(const SourceMotion& motion, double clip_seconds);
int ClipLength(double fps, double clip_seconds);

enum class Criterion {
  kRootJerk,
  kFootContactScore,
  kMinPelvisHeight,
  kMaxPelvisHeight,
  kPelvisSupportDistance,
  kSpineSupportDistance,
};
std::string CriterionName(Criterion c);

struct FilterFailure {
  Criterion criterion;
  double measured;
  double threshold;

  std::string Describe() const;
};

struct ClipMeasurements {
  double root_jerk = 0.0;
  double contact_score = 0.0;
  double min_pelvis_z = 0.0;
  double max_pelvis_z = 0.0;
  double pelvis_bos = 0.0;
  double spine_bos = 0.0;
};

struct ClipVerdict {
  bool pass = false;
  ClipMeasurements measured;
  std::vector<FilterFailure> reasons;
};

// Evaluates a ground-aligned clip against the thresholds. Every violated
// criterion is listed with its measured value.
ClipVerdict FilterClip(const SourceMotion& clip, const FilterThresholds& th,
                       const CurationJoints& joints, double contact_ramp_top);

struct ClipEntry {
  int clip_index = 0;
  int start_frame = 0;  // inclusive, in the resampled input
  int end_frame = 0;    // exclusive
  ClipVerdict verdict;
};

struct CurationReport {
  std::string source;  // input identifier, may be empty
  double fps = 0.0;
  int total_frames = 0;
  double ground_height = 0.0;
  std::vector<ClipEntry> clips;

  int kept() const;
  int discarded() const;
  double retained_seconds() const;
};

struct CurationResult {
  std::vector<SourceMotion> kept;
  CurationReport report;
};

// Resample to the filter rate, smooth, estimate and align the ground, chunk,
// then filter each clip. Kept clips stay in input order.
CurationResult Curate(const SourceMotion& motion, const CurationConfig& config);

nlohmann::json CurationReportToJson(const CurationReport& report);
std::string CurationCsvHeader();
// One row per clip.
std::string CurationCsvRows(const CurationReport& report);

}  // namespace groundwork

#endif  // GROUNDWORK_CURATION_CURATE_H_
