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

#ifndef GROUNDWORK_KINEMATICS_FORWARD_KINEMATICS_H_
#define GROUNDWORK_KINEMATICS_FORWARD_KINEMATICS_H_

#include <array>
#include <vector>

#include <Eigen/Core>

#include "groundwork/core/types.h"

namespace groundwork {

// World placement of every body and foot site for one frame.
struct BodyPoses {
  std::vector<Vec3> pos;
  std::vector<Mat3> rot;
  std::array<Vec3, kNumFootRegions> sites;

  Quat orientation(int body) const { return Quat(rot[body]); }
  const Vec3& site(FootRegion r) const { return sites[static_cast<int>(r)]; }
};

// Per-frame poses of a whole motion.
using FkResult = std::vector<BodyPoses>;

// Root body at (root_pos, root_rot); every other body is
// parent * translate(offset) * rotate(axis, q_joint).
BodyPoses ForwardKinematics(const RobotModel& model, const Eigen::VectorXd& q,
                            const Vec3& root_pos, const Quat& root_rot);

FkResult ForwardKinematics(const RobotModel& model,
                           const RetargetedMotion& motion);

// Column layout of kinematic Jacobians: root translation (3), root rotation
// as a world-frame exponential-map increment (3), then one column per joint.
inline constexpr int kRootDofs = 6;
using PositionJacobian = Eigen::Matrix<double, 3, Eigen::Dynamic>;

// d(world point rigidly attached to `body`)/d(configuration), evaluated at
// `poses`. Columns of joints that are not ancestors of `body` are zero.
PositionJacobian PointJacobian(const RobotModel& model, const BodyPoses& poses,
                               int body, const Vec3& world_point);

// Jacobian of the body origin.
PositionJacobian FkJacobian(const RobotModel& model, const Eigen::VectorXd& q,
                            const Vec3& root_pos, const Quat& root_rot, int body);

// exp([increment]x) * rot, renormalized.
Quat ApplyRotationIncrement(const Quat& rot, const Vec3& increment);

}  // namespace groundwork

#endif  // GROUNDWORK_KINEMATICS_FORWARD_KINEMATICS_H_
