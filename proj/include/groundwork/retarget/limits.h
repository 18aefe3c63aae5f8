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

#ifndef GROUNDWORK_RETARGET_LIMITS_H_
#define GROUNDWORK_RETARGET_LIMITS_H_

#include "groundwork/core/types.h"

namespace groundwork {

inline constexpr double kDefaultLimitMargin = 0.98;

struct Band {
  double lo;
  double hi;
  bool Contains(double x) const { return x >= lo && x <= hi; }
};

// Operating band inside [q_min, q_max]: each side gives up (1 - margin) / 2 of
// the span, so symmetric limits become [margin * q_min, margin * q_max] and
// the band stays well formed for limits of any sign.
Band PositionBand(const RobotJoint& joint, double margin);
// [-margin * v_max, margin * v_max].
Band VelocityBand(const RobotJoint& joint, double margin);

}  // namespace groundwork

#endif  // GROUNDWORK_RETARGET_LIMITS_H_
