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

#include "groundwork/kinematics/forward_kinematics.h"

#include <stdexcept>
#include <string>

namespace groundwork {

BodyPoses ForwardKinematics(const RobotModel& model, const Eigen::VectorXd& q,
                            const Vec3& root_pos, const Quat& root_rot) {
  if (q.size() != model.num_joints()) {
    throw std::invalid_argument("expected " + std::to_string(model.num_joints()) +
                                " joint angles, got " + std::to_string(q.size()));
  }
  const int n = model.num_bodies();
  BodyPoses poses;
  poses.pos.resize(n);
  poses.rot.resize(n);
  poses.pos[0] = root_pos;
  poses.rot[0] = root_rot.normalized().toRotationMatrix();
  for (int b = 1; b < n; ++b) {
    const RobotBody& body = model.bodies()[b];
    const Mat3& parent_rot = poses.rot[body.parent];
    poses.pos[b] = poses.pos[body.parent] + parent_rot * body.offset;
    const int j = model.joint_of_body(b);
    if (j < 0) {
      poses.rot[b] = parent_rot;
    } else {
      const RobotJoint& joint = model.joints()[j];
      poses.rot[b] = parent_rot * Eigen::AngleAxisd(q[j], joint.axis).toRotationMatrix();
    }
  }
  for (FootRegion r : kFootRegions) {
    const FootSite& site = model.foot_site(r);
    poses.sites[static_cast<int>(r)] =
        poses.pos[site.body] + poses.rot[site.body] * site.offset;
  }
  return poses;
}

FkResult ForwardKinematics(const RobotModel& model,
                           const RetargetedMotion& motion) {
  FkResult result;
  result.reserve(motion.num_frames());
  for (int t = 0; t < motion.num_frames(); ++t) {
    result.push_back(ForwardKinematics(model, motion.q[t], motion.root_pos[t],
                                       motion.root_rot[t]));
  }
  return result;
}

PositionJacobian PointJacobian(const RobotModel& model, const BodyPoses& poses,
                               int body, const Vec3& world_point) {
  if (body < 0 || body >= model.num_bodies()) {
    throw std::out_of_range("body index " + std::to_string(body) + " out of range");
  }
  PositionJacobian jac = PositionJacobian::Zero(3, kRootDofs + model.num_joints());
  jac.leftCols<3>().setIdentity();
  const Vec3 lever = world_point - poses.pos[0];
  // d/dw of exp([w]x) R p at w = 0 is -[lever]x.
  jac.col(3) = Vec3::UnitX().cross(lever);
  jac.col(4) = Vec3::UnitY().cross(lever);
  jac.col(5) = Vec3::UnitZ().cross(lever);
  for (int b = body; b > 0; b = model.bodies()[b].parent) {
    const int j = model.joint_of_body(b);
    if (j < 0) continue;
    const Vec3 axis = poses.rot[b] * model.joints()[j].axis;
    jac.col(kRootDofs + j) = axis.cross(world_point - poses.pos[b]);
  }
  return jac;
}

PositionJacobian FkJacobian(const RobotModel& model, const Eigen::VectorXd& q,
                            const Vec3& root_pos, const Quat& root_rot,
                            int body) {
  if (body < 0 || body >= model.num_bodies()) {
    throw std::out_of_range("body index " + std::to_string(body) + " out of range");
  }
  const BodyPoses poses = ForwardKinematics(model, q, root_pos, root_rot);
  return PointJacobian(model, poses, body, poses.pos[body]);
}

Quat ApplyRotationIncrement(const Quat& rot, const Vec3& increment) {
  const double angle = increment.norm();
  if (angle == 0.0) return rot;
  return (Quat(Eigen::AngleAxisd(angle, increment / angle)) * rot).normalized();
}

}  // namespace groundwork
