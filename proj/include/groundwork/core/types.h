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

#ifndef GROUNDWORK_CORE_TYPES_H_
#define GROUNDWORK_CORE_TYPES_H_

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace groundwork {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Quat = Eigen::Quaterniond;
using Mat3 = Eigen::Matrix3d;

// Foot regions in fixed order: left heel, left toe, right heel, right toe.
enum class FootRegion : int { kLH = 0, kLT = 1, kRH = 2, kRT = 3 };
inline constexpr int kNumFootRegions = 4;
inline constexpr std::array<FootRegion, kNumFootRegions> kFootRegions = {
    FootRegion::kLH, FootRegion::kLT, FootRegion::kRH, FootRegion::kRT};

std::string_view FootRegionName(FootRegion region);
// Returns false if `name` is not one of LH, LT, RH, RT.
bool ParseFootRegion(std::string_view name, FootRegion* region);

// Global joint and contact-marker tracks of a source human motion. World frame
// is z-up, meters.
struct SourceMotion {
  double fps = 30.0;
  std::vector<std::string> joint_names;
  // joints[t][i]
  std::vector<std::vector<Vec3>> joints;
  // markers[r][t][k]
  std::array<std::vector<std::vector<Vec3>>, kNumFootRegions> markers;

  int num_frames() const { return static_cast<int>(joints.size()); }
  int num_joints() const { return static_cast<int>(joint_names.size()); }
  // -1 if absent.
  int JointIndex(std::string_view name) const;
  // Throws std::invalid_argument when any invariant is violated.
  void Validate() const;
};

struct RobotBody {
  std::string name;
  int parent = -1;
  Vec3 offset = Vec3::Zero();
};

// One revolute degree of freedom rotating `body` relative to its parent.
struct RobotJoint {
  std::string name;
  int body = 0;
  Vec3 axis = Vec3::UnitZ();
  double q_min = 0.0;
  double q_max = 0.0;
  double v_max = 0.0;
};

struct FootSite {
  int body = 0;
  Vec3 offset = Vec3::Zero();
};

// Kinematic tree with a floating root at body 0. Bodies are stored in
// topological order (parent index < own index).
class RobotModel {
 public:
  RobotModel() = default;
  RobotModel(std::vector<RobotBody> bodies, std::vector<RobotJoint> joints,
             std::array<FootSite, kNumFootRegions> foot_sites,
             std::array<std::string, 2> balance_bodies);

  const std::vector<RobotBody>& bodies() const { return bodies_; }
  const std::vector<RobotJoint>& joints() const { return joints_; }
  const std::array<FootSite, kNumFootRegions>& foot_sites() const {
    return foot_sites_;
  }
  const FootSite& foot_site(FootRegion r) const {
    return foot_sites_[static_cast<int>(r)];
  }
  const std::array<std::string, 2>& balance_bodies() const {
    return balance_bodies_;
  }

  int num_bodies() const { return static_cast<int>(bodies_.size()); }
  int num_joints() const { return static_cast<int>(joints_.size()); }
  // Joint driving `body`, or -1 for fixed bodies and the root.
  int joint_of_body(int body) const { return joint_of_body_[body]; }
  int BodyIndex(std::string_view name) const;
  // True when `ancestor` lies on the path from `body` to the root (inclusive).
  bool IsAncestor(int ancestor, int body) const;
  std::vector<std::string> JointNames() const;

 private:
  void Init();

  std::vector<RobotBody> bodies_;
  std::vector<RobotJoint> joints_;
  std::array<FootSite, kNumFootRegions> foot_sites_{};
  std::array<std::string, 2> balance_bodies_;
  std::vector<int> joint_of_body_;
};

struct RetargetedMotion {
  double fps = 30.0;
  std::vector<std::string> joint_names;
  std::vector<Eigen::VectorXd> q;
  std::vector<Vec3> root_pos;
  std::vector<Quat> root_rot;

  int num_frames() const { return static_cast<int>(q.size()); }
  void Validate() const;
  void ValidateAgainst(const RobotModel& model) const;
};

// Graded contact score per foot region and frame, c[r][t] in [0, 1].
struct ContactSchedule {
  std::array<std::vector<double>, kNumFootRegions> c;

  int num_frames() const { return static_cast<int>(c[0].size()); }
  double at(FootRegion r, int t) const { return c[static_cast<int>(r)][t]; }
};

struct GroundPlane {
  double height = 0.0;
  double tolerance = 0.025;
};

}  // namespace groundwork

#endif  // GROUNDWORK_CORE_TYPES_H_
