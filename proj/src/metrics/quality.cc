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

#include "groundwork/metrics/quality.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "groundwork/core/io.h"

namespace groundwork {

namespace {

bool InContact(const ContactSchedule& contacts, int r, size_t t) {
  return contacts.c[r][t] >= kContactScoreThreshold;
}

void CheckFrames(size_t a, size_t b) {
  if (a != b) {
    throw std::invalid_argument("frame count mismatch: " + std::to_string(a) +
                                " vs " + std::to_string(b));
  }
}

template <typename Pred>
PercentMetric CountContacts(const FkResult& fk, const ContactSchedule& contacts,
                            Pred&& ok) {
  CheckFrames(fk.size(), static_cast<size_t>(contacts.num_frames()));
  PercentMetric m;
  for (size_t t = 0; t < fk.size(); ++t) {
    for (int r = 0; r < kNumFootRegions; ++r) {
      if (!InContact(contacts, r, t)) continue;
      ++m.denominator;
      if (ok(fk[t].sites[r])) ++m.qualifying;
    }
  }
  return m;
}

nlohmann::json MetricJson(const PercentMetric& m) {
  const auto pct = m.percent();
  return {{"percent", pct ? nlohmann::json(*pct) : nlohmann::json(nullptr)},
          {"qualifying", m.qualifying},
          {"denominator", m.denominator}};
}

std::string PercentCell(const PercentMetric& m) {
  const auto pct = m.percent();
  return pct ? FormatNumber(*pct) : std::string();
}

MetricSummary SummarizeOne(const std::vector<QualityReport>& reports,
                           PercentMetric QualityReport::*field) {
  std::vector<double> values;
  for (const QualityReport& r : reports) {
    if (auto pct = (r.*field).percent()) values.push_back(*pct);
  }
  MetricSummary s;
  s.clips = static_cast<int>(values.size());
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / values.size();
  std::sort(values.begin(), values.end());
  const size_t mid = values.size() / 2;
  s.median = values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  return s;
}

nlohmann::json SummaryJson(const MetricSummary& s) {
  return {{"mean", s.mean ? nlohmann::json(*s.mean) : nlohmann::json(nullptr)},
          {"median", s.median ? nlohmann::json(*s.median) : nlohmann::json(nullptr)},
          {"clips", s.clips}};
}

}  // namespace

PercentMetric MotionFidelity(const FkResult& fk, const SourceMotion& target,
                             const JointCorrespondence& corr) {
  CheckFrames(fk.size(), static_cast<size_t>(target.num_frames()));
  const double max_angle = kFidelityAngleErrorDeg * std::numbers::pi / 180.0;
  PercentMetric m;
  for (size_t t = 0; t < fk.size(); ++t) {
    ++m.denominator;
    double position = 0.0;
    for (const CorrespondencePair& pair : corr.pairs) {
      position += (fk[t].pos[pair.body] - target.joints[t][pair.source]).norm();
    }
    if (!corr.pairs.empty()) position /= corr.pairs.size();
    double angle = 0.0;
    for (const CorrespondenceLink& link : corr.links) {
      const CorrespondencePair& a = corr.pairs[link.parent];
      const CorrespondencePair& b = corr.pairs[link.child];
      const Vec3 src = target.joints[t][b.source] - target.joints[t][a.source];
      const Vec3 rob = fk[t].pos[b.body] - fk[t].pos[a.body];
      if (!(src.norm() > 0.0) || !(rob.norm() > 0.0)) {
        throw std::invalid_argument("frame " + std::to_string(t) +
                                    ": zero-length bone in fidelity metric");
      }
      // atan2 form stays accurate near 0 and pi.
      angle += std::atan2(src.cross(rob).norm(), src.dot(rob));
    }
    if (!corr.links.empty()) angle /= corr.links.size();
    if (position < kFidelityPositionError && angle < max_angle) ++m.qualifying;
  }
  return m;
}

PercentMetric JointFeasibility(const RetargetedMotion& motion,
                               const RobotModel& model, double margin) {
  PercentMetric m;
  const int n = motion.num_frames();
  for (int t = 0; t < n; ++t) {
    ++m.denominator;
    bool ok = true;
    for (int j = 0; j < model.num_joints() && ok; ++j) {
      const RobotJoint& joint = model.joints()[j];
      ok = PositionBand(joint, margin).Contains(motion.q[t][j]);
      if (ok && t + 1 < n) {
        const double v = motion.fps * (motion.q[t + 1][j] - motion.q[t][j]);
        ok = VelocityBand(joint, margin).Contains(v);
      }
    }
    if (ok) ++m.qualifying;
  }
  return m;
}

PercentMetric NonFloating(const FkResult& fk, const ContactSchedule& contacts) {
  return CountContacts(fk, contacts,
                       [](const Vec3& p) { return p.z() <= kFloatTolerance; });
}

PercentMetric NonPenetration(const FkResult& fk, const ContactSchedule& contacts) {
  return CountContacts(fk, contacts,
                       [](const Vec3& p) { return p.z() >= -kPenetrationTolerance; });
}

PercentMetric NonSkating(const FkResult& fk, const ContactSchedule& contacts,
                         double fps) {
  CheckFrames(fk.size(), static_cast<size_t>(contacts.num_frames()));
  PercentMetric m;
  for (size_t t = 0; t + 1 < fk.size(); ++t) {
    for (int r = 0; r < kNumFootRegions; ++r) {
      if (!InContact(contacts, r, t)) continue;
      ++m.denominator;
      const Vec3 step = fk[t + 1].sites[r] - fk[t].sites[r];
      if (fps * std::hypot(step.x(), step.y()) < kSkateSpeed) ++m.qualifying;
    }
  }
  return m;
}

QualityReport MakeQualityReport(const RetargetedMotion& motion,
                                const SourceMotion& target,
                                const JointCorrespondence& corr,
                                const RobotModel& model,
                                const ContactSchedule& contacts, double margin) {
  motion.ValidateAgainst(model);
  const FkResult fk = ForwardKinematics(model, motion);
  QualityReport report;
  report.motion_fidelity = MotionFidelity(fk, target, corr);
  report.joint_feasibility = JointFeasibility(motion, model, margin);
  report.non_floating = NonFloating(fk, contacts);
  report.non_penetration = NonPenetration(fk, contacts);
  report.non_skating = NonSkating(fk, contacts, motion.fps);
  return report;
}

nlohmann::json QualityReportToJson(const QualityReport& report) {
  return {{"motion_fidelity", MetricJson(report.motion_fidelity)},
          {"joint_feasibility", MetricJson(report.joint_feasibility)},
          {"non_floating", MetricJson(report.non_floating)},
          {"non_penetration", MetricJson(report.non_penetration)},
          {"non_skating", MetricJson(report.non_skating)}};
}

std::string QualityCsvHeader() {
  return "clip,motion_fidelity_pct,joint_feasibility_pct,non_floating_pct,"
         "non_penetration_pct,non_skating_pct,frames,contact_pairs,"
         "skating_pairs\n";
}

std::string QualityCsvRow(const std::string& name, const QualityReport& report) {
  return name + "," + PercentCell(report.motion_fidelity) + "," +
         PercentCell(report.joint_feasibility) + "," +
         PercentCell(report.non_floating) + "," +
         PercentCell(report.non_penetration) + "," +
         PercentCell(report.non_skating) + "," +
         std::to_string(report.motion_fidelity.denominator) + "," +
         std::to_string(report.non_floating.denominator) + "," +
         std::to_string(report.non_skating.denominator) + "\n";
}

CorpusSummary Summarize(const std::vector<QualityReport>& reports) {
  return {SummarizeOne(reports, &QualityReport::motion_fidelity),
          SummarizeOne(reports, &QualityReport::joint_feasibility),
          SummarizeOne(reports, &QualityReport::non_floating),
          SummarizeOne(reports, &QualityReport::non_penetration),
          SummarizeOne(reports, &QualityReport::non_skating)};
}

nlohmann::json CorpusSummaryToJson(const CorpusSummary& s) {
  return {{"motion_fidelity", SummaryJson(s.motion_fidelity)},
          {"joint_feasibility", SummaryJson(s.joint_feasibility)},
          {"non_floating", SummaryJson(s.non_floating)},
          {"non_penetration", SummaryJson(s.non_penetration)},
          {"non_skating", SummaryJson(s.non_skating)}};
}

}  // namespace groundwork
