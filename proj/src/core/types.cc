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

#include "groundwork/core/types.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace groundwork {

namespace {

bool Finite(const Vec3& v) { return v.allFinite(); }

[[noreturn]] void Fail(const std::string& message) {
  throw std::invalid_argument(message);
}

}  // namespace

std::string_view FootRegionName(FootRegion region) {
  switch (region) {
    case FootRegion::kLH:
      return "LH";
    case FootRegion::kLT:
      return "LT";
    case FootRegion::kRH:
      return "RH";
    case FootRegion::kRT:
      return "RT";
  }
  return "?";
}

bool ParseFootRegion(std::string_view name, FootRegion* region) {
  for (FootRegion r : kFootRegions) {
    if (FootRegionName(r) == name) {
      *region = r;
      return true;
    }
  }
  return false;
}

int SourceMotion::JointIndex(std::string_view name) const {
  for (int i = 0; i < num_joints(); ++i) {
    if (joint_names[i] == name) return i;
  }
  return -1;
}

void SourceMotion::Validate() const {
  if (!(fps > 0.0) || !std::isfinite(fps)) Fail("fps must be positive");
  if (num_frames() < 3) {
    Fail("too few frames: " + std::to_string(num_frames()) +
         " (need at least 3)");
  }
  for (int t = 0; t < num_frames(); ++t) {
    if (static_cast<int>(joints[t].size()) != num_joints()) {
      Fail("frame " + std::to_string(t) + ": expected " +
           std::to_string(num_joints()) + " joints, got " +
           std::to_string(joints[t].size()));
    }
    for (int i = 0; i < num_joints(); ++i) {
      if (!Finite(joints[t][i])) {
        Fail("frame " + std::to_string(t) + ": non-finite position for joint " +
             joint_names[i]);
      }
    }
  }
  for (FootRegion r : kFootRegions) {
    const auto& track = markers[static_cast<int>(r)];
    const std::string region(FootRegionName(r));
    if (static_cast<int>(track.size()) != num_frames()) {
      Fail("markers " + region + ": expected " + std::to_string(num_frames()) +
           " frames, got " + std::to_string(track.size()));
    }
    for (int t = 0; t < num_frames(); ++t) {
      if (track[t].size() != track[0].size()) {
        Fail("frame " + std::to_string(t) + ": marker count for " + region +
             " differs from frame 0");
      }
      for (const Vec3& p : track[t]) {
        if (!Finite(p)) {
          Fail("frame " + std::to_string(t) + ": non-finite marker in " +
               region);
        }
      }
    }
  }
}

RobotModel::RobotModel(std::vector<RobotBody> bodies,
                       std::vector<RobotJoint> joints,
                       std::array<FootSite, kNumFootRegions> foot_sites,
                       std::array<std::string, 2> balance_bodies)
    : bodies_(std::move(bodies)),
      joints_(std::move(joints)),
      foot_sites_(foot_sites),
      balance_bodies_(std::move(balance_bodies)) {
  Init();
}

void RobotModel::Init() {
  joint_of_body_.assign(bodies_.size(), -1);
  if (bodies_.empty()) Fail("robot model has no bodies");
  if (bodies_[0].parent != -1) Fail("body 0 must be the root (parent -1)");
  for (int b = 0; b < num_bodies(); ++b) {
    if (!Finite(bodies_[b].offset)) {
      Fail("body " + bodies_[b].name + ": non-finite offset");
    }
    for (int other = 0; other < b; ++other) {
      if (bodies_[other].name == bodies_[b].name) {
        Fail("duplicate body name " + bodies_[b].name);
      }
    }
    if (b == 0) continue;
    if (bodies_[b].parent < 0 || bodies_[b].parent >= b) {
      Fail("body " + bodies_[b].name +
           ": parent index must reference an earlier body");
    }
  }
  for (int j = 0; j < num_joints(); ++j) {
    const RobotJoint& joint = joints_[j];
    if (joint.body <= 0 || joint.body >= num_bodies()) {
      Fail("joint " + joint.name + ": body index out of range (root excluded)");
    }
    if (joint_of_body_[joint.body] != -1) {
      Fail("joint " + joint.name + ": body " + bodies_[joint.body].name +
           " already has a joint");
    }
    joint_of_body_[joint.body] = j;
    const double norm = joint.axis.norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-6) {
      Fail("joint " + joint.name + ": axis must be a unit vector");
    }
    if (!(joint.q_min < joint.q_max)) {
      Fail("joint " + joint.name + ": q_min must be below q_max");
    }
    if (!(joint.v_max > 0.0)) Fail("joint " + joint.name + ": v_max must be > 0");
  }
  for (FootRegion r : kFootRegions) {
    const FootSite& site = foot_sites_[static_cast<int>(r)];
    if (site.body < 0 || site.body >= num_bodies()) {
      Fail("foot site " + std::string(FootRegionName(r)) +
           ": body index out of range");
    }
  }
  for (const std::string& name : balance_bodies_) {
    if (BodyIndex(name) < 0) Fail("balance body " + name + " not in model");
  }
}

int RobotModel::BodyIndex(std::string_view name) const {
  for (int b = 0; b < num_bodies(); ++b) {
    if (bodies_[b].name == name) return b;
  }
  return -1;
}

bool RobotModel::IsAncestor(int ancestor, int body) const {
  for (int b = body; b >= 0; b = bodies_[b].parent) {
    if (b == ancestor) return true;
  }
  return false;
}

std::vector<std::string> RobotModel::JointNames() const {
  std::vector<std::string> names;
  names.reserve(joints_.size());
  for (const RobotJoint& j : joints_) names.push_back(j.name);
  return names;
}

void RetargetedMotion::Validate() const {
  if (!(fps > 0.0)) Fail("fps must be positive");
  const size_t n = q.size();
  if (root_pos.size() != n || root_rot.size() != n) {
    Fail("q, root_pos and root_rot must have the same frame count");
  }
  for (size_t t = 0; t < n; ++t) {
    if (static_cast<size_t>(q[t].size()) != joint_names.size()) {
      Fail("frame " + std::to_string(t) + ": expected " +
           std::to_string(joint_names.size()) + " joint angles");
    }
    if (!q[t].allFinite() || !root_pos[t].allFinite() ||
        !root_rot[t].coeffs().allFinite()) {
      Fail("frame " + std::to_string(t) + ": non-finite value");
    }
    if (std::abs(root_rot[t].norm() - 1.0) > 1e-6) {
      Fail("frame " + std::to_string(t) + ": root_rot is not a unit quaternion");
    }
  }
}

void RetargetedMotion::ValidateAgainst(const RobotModel& model) const {
  Validate();
  if (static_cast<int>(joint_names.size()) != model.num_joints()) {
    Fail("motion has " + std::to_string(joint_names.size()) +
         " joints, robot model has " + std::to_string(model.num_joints()));
  }
  for (int j = 0; j < model.num_joints(); ++j) {
    if (joint_names[j] != model.joints()[j].name) {
      Fail("joint " + std::to_string(j) + " is " + joint_names[j] +
           ", robot model expects " + model.joints()[j].name);
    }
  }
}

}  // namespace groundwork
