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

#ifndef GROUNDWORK_CURATION_SUPPORT_H_
#define GROUNDWORK_CURATION_SUPPORT_H_

#include <span>
#include <vector>

#include "groundwork/core/types.h"

namespace groundwork {

// Convex polygon in the horizontal plane, counter-clockwise, no repeated or
// collinear vertices. One vertex is a point hull, two a segment.
struct SupportPolygon {
  std::vector<Vec2> vertices;
};

// Convex hull of the xy-projections (monotone chain).
SupportPolygon BaseOfSupport(std::span<const Vec3> points);

// Zero when the xy-projection of `point` is inside or on the polygon,
// otherwise the distance to the nearest boundary point.
double DistanceToSupport(const Vec3& point, const SupportPolygon& hull);

}  // namespace groundwork

#endif  // GROUNDWORK_CURATION_SUPPORT_H_
