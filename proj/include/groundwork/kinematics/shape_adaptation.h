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

#ifndef GROUNDWORK_KINEMATICS_SHAPE_ADAPTATION_H_
#define GROUNDWORK_KINEMATICS_SHAPE_ADAPTATION_H_

#include <vector>

#include "groundwork/core/types.h"
#include "groundwork/kinematics/correspondence.h"

namespace groundwork {

// Rest-pose (q = 0, root at the origin) length of every correspondence link,
// indexed like JointCorrespondence::links.
std::vector<double> RestLinkLengths(const RobotModel& model,
                                    const JointCorrespondence& corr);

// Time-averaged source length of every correspondence link.
std::vector<double> MeanSourceLinkLengths(const SourceMotion& source,
                                          const JointCorrespondence& corr);

// Rebuilds corresponded source joints outward from the root pairs so each
// link keeps its per-frame direction but takes the robot's rest length.
// Root pair trajectories are kept. Foot-region markers move rigidly with the
// source joint of the nearest corresponded ancestor of their foot-site body;
// uncorresponded joints are left in place. For a rigid source this is the
// per-link rescaling by rest / mean source length.
SourceMotion AdaptSourceShape(const SourceMotion& source,
                              const JointCorrespondence& corr,
                              const RobotModel& model);

// One uniform scale (total rest length over total mean source length) about
// the root pair, applied to all joints and markers.
SourceMotion RigidScaleSource(const SourceMotion& source,
                              const JointCorrespondence& corr,
                              const RobotModel& model);

}  // namespace groundwork

#endif  // GROUNDWORK_KINEMATICS_SHAPE_ADAPTATION_H_
