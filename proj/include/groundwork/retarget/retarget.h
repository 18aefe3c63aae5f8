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

#ifndef GROUNDWORK_RETARGET_RETARGET_H_
#define GROUNDWORK_RETARGET_RETARGET_H_

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "groundwork/core/types.h"
#include "groundwork/curation/ground.h"
#include "groundwork/kinematics/correspondence.h"
#include "groundwork/retarget/config.h"
#include "groundwork/retarget/losses.h"

namespace groundwork {

// Source-side inputs of one optimization: the (shape-adapted or rigidly
// scaled) ground-aligned reference and its frozen contact schedule.
struct RetargetProblem {
  const RobotModel* model = nullptr;
  SourceMotion target;
  JointCorrespondence corr;
  ContactSchedule contacts;
};

struct TargetOptions {
  double ground_tolerance = kDefaultGroundTolerance;  // m
  double contact_ramp_top = 0.025;                    // m
  // Source joints whose horizontal difference sets the initial heading.
  std::string left_hip = "left_hip";
  std::string right_hip = "right_hip";
};

// IK uses RigidScaleSource, every other mode AdaptSourceShape; the result is
// then re-grounded by majority vote and scored for contact.
RetargetProblem PrepareProblem(const SourceMotion& source, const RobotModel& model,
                               const JointCorrespondence& corr, RetargetMode mode,
                               const TargetOptions& options);

struct LossBreakdown {
  std::array<double, kNumLossTerms> raw{};  // unweighted, all terms
  double total = 0.0;                       // weighted, active terms only

  double operator[](LossTerm term) const { return raw[static_cast<int>(term)]; }
};

struct Objective {
  LossBreakdown loss;
  VariableGradient gradient;
};

// Weighted sum of the terms active in cfg.mode and, when requested, its
// gradient (zero subgradient at kinks). Inactive terms are still reported
// in loss.raw.
Objective TotalLoss(const DecisionVariables& vars, const RetargetProblem& problem,
                    const OptimizerConfig& cfg, bool with_gradient = true);

// Weighted sum of the active terms of `raw`.
double WeightedTotal(const std::array<double, kNumLossTerms>& raw,
                     const OptimizerConfig& cfg);

// Non-finite loss during optimization.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(int iteration, std::string term);
  int iteration() const { return iteration_; }
  const std::string& term() const { return term_; }

 private:
  int iteration_;
  std::string term_;
};

struct TraceRow {
  int iteration = 0;
  LossBreakdown loss;
  double best = 0.0;
};

struct RetargetResult {
  RetargetedMotion motion;
  std::vector<TraceRow> trace;
  RetargetProblem problem;
  int best_iteration = 0;
};

// q = 0 (band midpoint when 0 lies outside the band) plus seeded jitter,
// root on the reference root trajectory, heading from the hip pair.
DecisionVariables InitialVariables(const RetargetProblem& problem,
                                   const OptimizerConfig& cfg,
                                   const TargetOptions& options);

// Adam-style descent over all frames jointly; q is clamped to
// [q_min, q_max] after every step. The feasibility, ground and skate weights
// ramp up linearly over the warm-up iterations. Trace totals and the
// returned lowest-loss iterate always use the full weights.
RetargetResult Optimize(const RetargetProblem& problem, DecisionVariables init,
                        const OptimizerConfig& cfg);

RetargetResult Retarget(const SourceMotion& source, const RobotModel& model,
                        const JointCorrespondence& corr, const OptimizerConfig& cfg,
                        const TargetOptions& options = {});

// iteration,total,best,<term>... with unweighted term values.
std::string TraceCsv(const std::vector<TraceRow>& trace);

}  // namespace groundwork

#endif  // GROUNDWORK_RETARGET_RETARGET_H_
