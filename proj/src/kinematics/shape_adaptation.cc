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

#include "groundwork/kinematics/shape_adaptation.h"

#include <stdexcept>
#include <string>

#include "groundwork/kinematics/forward_kinematics.h"

namespace groundwork {

namespace {

std::string LinkName(const SourceMotion& source, const JointCorrespondence& corr,
                     const CorrespondenceLink& link) {
  return source.joint_names[corr.pairs[link.parent].source] + "->" +
         source.joint_names[corr.pairs[link.child].source];
}

// Source joint that carries the markers of a foot site on `body`.
int MarkerAnchor(const RobotModel& model, const JointCorrespondence& corr,
                 int body) {
  for (int b = body; b >= 0; b = model.bodies()[b].parent) {
    const int pair = corr.PairOfBody(b);
    if (pair >= 0) return corr.pairs[pair].source;
  }
  return -1;
}

int RootSourceJoint(const JointCorrespondence& corr) {
  const std::vector<int> roots = corr.RootPairs();
  if (roots.empty()) throw std::invalid_argument("correspondence is empty");
  return corr.pairs[roots.front()].source;
}

}  // namespace

std::vector<double> RestLinkLengths(const RobotModel& model,
                                    const JointCorrespondence& corr) {
  const BodyPoses rest = ForwardKinematics(
      model, Eigen::VectorXd::Zero(model.num_joints()), Vec3::Zero(),
      Quat::Identity());
  std::vector<double> lengths;
  for (const CorrespondenceLink& link : corr.links) {
    lengths.push_back(
        (rest.pos[corr.pairs[link.child].body] - rest.pos[corr.pairs[link.parent].body])
            .norm());
  }
  return lengths;
}

std::vector<double> MeanSourceLinkLengths(const SourceMotion& source,
                                          const JointCorrespondence& corr) {
  std::vector<double> lengths;
  for (const CorrespondenceLink& link : corr.links) {
    const int a = corr.pairs[link.parent].source;
    const int b = corr.pairs[link.child].source;
    double sum = 0.0;
    for (const auto& frame : source.joints) sum += (frame[b] - frame[a]).norm();
    lengths.push_back(sum / source.num_frames());
  }
  return lengths;
}

SourceMotion AdaptSourceShape(const SourceMotion& source,
                              const JointCorrespondence& corr,
                              const RobotModel& model) {
  const std::vector<double> rest = RestLinkLengths(model, corr);
  const std::vector<double> mean = MeanSourceLinkLengths(source, corr);
  for (size_t l = 0; l < corr.links.size(); ++l) {
    if (!(mean[l] > 0.0)) {
      throw std::invalid_argument("zero-length source bone " +
                                  LinkName(source, corr, corr.links[l]));
    }
    if (!(rest[l] > 0.0)) {
      throw std::invalid_argument("zero-length robot bone " +
                                  LinkName(source, corr, corr.links[l]));
    }
  }

  SourceMotion out = source;
  for (int t = 0; t < source.num_frames(); ++t) {
    const auto& in = source.joints[t];
    auto& adapted = out.joints[t];
    // links are ordered by child body, so parents are final before children.
    for (size_t l = 0; l < corr.links.size(); ++l) {
      const CorrespondenceLink& link = corr.links[l];
      const int a = corr.pairs[link.parent].source;
      const int b = corr.pairs[link.child].source;
      const Vec3 bone = in[b] - in[a];
      const double length = bone.norm();
      if (!(length > 0.0)) {
        throw std::invalid_argument("frame " + std::to_string(t) +
                                    ": zero-length source bone " +
                                    LinkName(source, corr, link));
      }
      adapted[b] = adapted[a] + bone * (rest[l] / length);
    }
  }

  for (int r = 0; r < kNumFootRegions; ++r) {
    const int anchor = MarkerAnchor(model, corr, model.foot_sites()[r].body);
    if (anchor < 0) continue;
    for (int t = 0; t < source.num_frames(); ++t) {
      const Vec3 shift = out.joints[t][anchor] - source.joints[t][anchor];
      for (Vec3& p : out.markers[r][t]) p += shift;
    }
  }
  return out;
}

SourceMotion RigidScaleSource(const SourceMotion& source,
                              const JointCorrespondence& corr,
                              const RobotModel& model) {
  const std::vector<double> rest = RestLinkLengths(model, corr);
  const std::vector<double> mean = MeanSourceLinkLengths(source, corr);
  double rest_total = 0.0;
  double source_total = 0.0;
  for (size_t l = 0; l < rest.size(); ++l) {
    rest_total += rest[l];
    source_total += mean[l];
  }
  if (!(source_total > 0.0)) {
    throw std::invalid_argument("source skeleton has zero total bone length");
  }
  const double scale = rest_total / source_total;
  const int root = RootSourceJoint(corr);
  SourceMotion out = source;
  for (int t = 0; t < source.num_frames(); ++t) {
    const Vec3 center = source.joints[t][root];
    for (Vec3& p : out.joints[t]) p = center + scale * (p - center);
    for (auto& track : out.markers) {
      for (Vec3& p : track[t]) p = center + scale * (p - center);
    }
  }
  return out;
}

}  // namespace groundwork
