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

#ifndef GROUNDWORK_CURATION_GROUND_H_
#define GROUNDWORK_CURATION_GROUND_H_

#include "groundwork/core/types.h"

namespace groundwork {

inline constexpr double kDefaultGroundTolerance = 0.025;  // m

// Majority-vote ground height. Each frame proposes the lowest marker height as
// a candidate; the candidate whose band |z - g| <= delta holds the most
// markers over all frames wins, ties going to the lowest candidate.
GroundPlane EstimateGroundPlane(const SourceMotion& motion,
                                double delta = kDefaultGroundTolerance);

// Shifts every joint and marker vertically so the plane sits at z = 0.
SourceMotion AlignToGround(const SourceMotion& motion, const GroundPlane& plane);

// Graded contact: per region and frame, the mean over the region's markers of
// clamp((ramp_top - z) / ramp_top, 0, 1).
ContactSchedule ContactScores(const SourceMotion& motion, double ramp_top);

// Mean over frames of the largest region score.
double FootContactScore(const ContactSchedule& schedule);

}  // namespace groundwork

#endif  // GROUNDWORK_CURATION_GROUND_H_
