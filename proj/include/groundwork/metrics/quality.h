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

#ifndef GROUNDWORK_METRICS_QUALITY_H_
#define GROUNDWORK_METRICS_QUALITY_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "groundwork/core/types.h"
#include "groundwork/kinematics/correspondence.h"
#include "groundwork/kinematics/forward_kinematics.h"
#include "groundwork/retarget/limits.h"

namespace groundwork {

inline constexpr double kFidelityPositionError = 0.10;   // m
inline constexpr double kFidelityAngleErrorDeg = 10.0;   // degrees
inline constexpr double kContactScoreThreshold = 0.5;
inline constexpr double kFloatTolerance = 0.01;          // m above ground
inline constexpr double kPenetrationTolerance = 0.01;    // m below ground
inline constexpr double kSkateSpeed = 0.10;              // m/s

// A percentage backed by its counts; undefined (nullopt) when the
// denominator is zero.
struct PercentMetric {
  int qualifying = 0;
  int denominator = 0;

  std::optional<double> percent() const {
    if (denominator == 0) return std::nullopt;
    return 100.0 * qualifying / denominator;
  }
};

struct QualityReport {
  PercentMetric motion_fidelity;
  PercentMetric joint_feasibility;
  PercentMetric non_floating;
  PercentMetric non_penetration;
  PercentMetric non_skating;
};

// Frames whose mean corresponded-joint error is below 10 cm and whose mean
// link direction error is below 10 degrees.
PercentMetric MotionFidelity(const FkResult& fk, const SourceMotion& target,
                             const JointCorrespondence& corr);
// Frames where every joint angle and forward-difference velocity lies in its
// margin band. The last frame has no velocity and is judged on positions.
PercentMetric JointFeasibility(const RetargetedMotion& motion,
                               const RobotModel& model,
                               double margin = kDefaultLimitMargin);
// Contact (region, frame) pairs, c >= 0.5, with the site at most 1 cm above
// the ground.
PercentMetric NonFloating(const FkResult& fk, const ContactSchedule& contacts);
// Contact pairs with the site at most 1 cm below the ground.
PercentMetric NonPenetration(const FkResult& fk, const ContactSchedule& contacts);
// Contact pairs (frames with a forward difference) whose horizontal site
// speed is below 10 cm/s.
PercentMetric NonSkating(const FkResult& fk, const ContactSchedule& contacts,
                         double fps);

// `target` is the shape-adapted, ground-aligned source and `contacts` its
// contact schedule.
QualityReport MakeQualityReport(const RetargetedMotion& motion,
                                const SourceMotion& target,
                                const JointCorrespondence& corr,
                                const RobotModel& model,
                                const ContactSchedule& contacts,
                                double margin = kDefaultLimitMargin);

nlohmann::json QualityReportToJson(const QualityReport& report);
std::string QualityCsvHeader();
std::string QualityCsvRow(const std::string& name, const QualityReport& report);

// Mean and median of each metric over the reports where it is defined.
struct MetricSummary {
  std::optional<double> mean;
  std::optional<double> median;
  int clips = 0;
};
struct CorpusSummary {
  MetricSummary motion_fidelity;
  MetricSummary joint_feasibility;
  MetricSummary non_floating;
  MetricSummary non_penetration;
  MetricSummary non_skating;
};
CorpusSummary Summarize(const std::vector<QualityReport>& reports);
nlohmann::json CorpusSummaryToJson(const CorpusSummary& summary);

}  // namespace groundwork

#endif  // GROUNDWORK_METRICS_QUALITY_H_
