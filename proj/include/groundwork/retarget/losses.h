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

#ifndef GROUNDWORK_RETARGET_LOSSES_H_
#define GROUNDWORK_RETARGET_LOSSES_H_

#include <array>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "groundwork/core/types.h"
#include "groundwork/kinematics/correspondence.h"
#include "groundwork/kinematics/forward_kinematics.h"

namespace groundwork {

// Per-frame optimization variables. Root orientation is updated through
// world-frame exponential-map increments about root_rot.
struct DecisionVariables {
  std::vector<Eigen::VectorXd> q;
  std::vector<Vec3> root_pos;
  std::vector<Quat> root_rot;

  int num_frames() const { return static_cast<int>(q.size()); }
  RetargetedMotion ToMotion(const RobotModel& model, double fps) const;
  static DecisionVariables FromMotion(const RetargetedMotion& motion);
};

// Same layout as DecisionVariables; root_rot holds d/d(increment).
struct VariableGradient {
  std::vector<Eigen::VectorXd> q;
  std::vector<Vec3> root_pos;
  std::vector<Vec3> root_rot;

  static VariableGradient Zero(int frames, int joints);
  void SetZero();
  // Flattened as [q_t, root_pos_t, root_rot_t] per frame.
  Eigen::VectorXd Flatten() const;
};

// Gradient of a scalar with respect to world body origins and foot sites.
struct PoseGradient {
  std::vector<std::vector<Vec3>> body;
  std::vector<std::array<Vec3, kNumFootRegions>> site;

  void Reset(int frames, int bodies);
};

// Chain rule through the kinematic tree: adds J^T * pose_grad to `grad`.
void BackpropagatePoseGradient(const RobotModel& model, const FkResult& fk,
                               const PoseGradient& pose_grad,
                               VariableGradient* grad);

FkResult ForwardKinematics(const RobotModel& model, const DecisionVariables& vars);

// A local-match bone with zero length on either side.
class DegenerateBoneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// In every loss below, an optional gradient output is accumulated with
// weight `scale`; nothing is written when it is null.

// Sum over frames and pairs of the L1 distance between source and robot
// positions. With `end_effectors_only`, only flagged pairs count.
double LossGlobalMatch(const FkResult& fk, const SourceMotion& source,
                       const JointCorrespondence& corr,
                       bool end_effectors_only = false,
                       PoseGradient* grad = nullptr, double scale = 1.0);

struct LocalMatchValue {
  double position = 0.0;
  double orientation = 0.0;
  double total() const { return position + orientation; }
};

// Sum over frames and ordered adjacent pairs (i, j), i != j, of
// |dp_src - dp_rob|^2 + (1 - <unit(dp_src), unit(dp_rob)>), dp = p_i - p_j.
// The mask is symmetric, so every link is counted in both directions.
LocalMatchValue LossLocalMatch(const FkResult& fk, const SourceMotion& source,
                               const JointCorrespondence& corr,
                               PoseGradient* grad = nullptr, double scale = 1.0);

// L1 norm of v_t - 2 v_{t+1} + v_{t+2} for joint and root velocities
// (forward differences times fps), summed over t. Needs 4 frames.
double LossSmooth(const DecisionVariables& vars, double fps,
                  VariableGradient* grad = nullptr, double scale = 1.0);

struct FeasibilityValue {
  double position = 0.0;
  double velocity = 0.0;
  double total() const { return position + velocity; }
};

// Hinge excursions of joint positions and forward-difference velocities
// outside the margin bands of limits.h.
FeasibilityValue LossFeasibility(const DecisionVariables& vars,
                                 const RobotModel& model, double margin,
                                 double fps, VariableGradient* grad = nullptr,
                                 double scale = 1.0);

// Sum over regions and frames of c * z^2 of the robot foot site.
double LossGround(const FkResult& fk, const ContactSchedule& contacts,
                  PoseGradient* grad = nullptr, double scale = 1.0);

// Sum over regions and frames t < T-1 of c_t * |horizontal foot-site velocity|.
double LossSkate(const FkResult& fk, const ContactSchedule& contacts, double fps,
                 PoseGradient* grad = nullptr, double scale = 1.0);

}  // namespace groundwork

#endif  // GROUNDWORK_RETARGET_LOSSES_H_
