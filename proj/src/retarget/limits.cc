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

#include "groundwork/retarget/limits.h"

#include <cmath>

namespace groundwork {

Band PositionBand(const RobotJoint& joint, double margin) {
  const double buffer = 0.5 * (1.0 - margin) * std::abs(joint.q_max - joint.q_min);
  return {joint.q_min + buffer, joint.q_max - buffer};
}

Band VelocityBand(const RobotJoint& joint, double margin) {
  return {-margin * joint.v_max, margin * joint.v_max};
}

}  // namespace groundwork
