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

#include "groundwork/curation/ground.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace groundwork {

GroundPlane EstimateGroundPlane(const SourceMotion& motion, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("ground tolerance must be > 0");
  const int n = motion.num_frames();
  if (n == 0) throw std::invalid_argument("motion has no frames");
  std::vector<double> heights;
  std::vector<double> candidates(n);
  for (int t = 0; t < n; ++t) {
    double lowest = std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& track : motion.markers) {
      for (const Vec3& p : track[t]) {
        heights.push_back(p.z());
        lowest = std::min(lowest, p.z());
        any = true;
      }
    }
    if (!any) {
      throw std::invalid_argument("frame " + std::to_string(t) +
                                  " has no contact markers");
    }
    candidates[t] = lowest;
  }
  std::sort(heights.begin(), heights.end());

  // fl(z - g) is monotone in z, so the band is a contiguous range of the
  // sorted heights and counting it matches the per-marker test exactly.
  size_t best_count = 0;
  double best = std::numeric_limits<double>::infinity();
  for (double g : candidates) {
    auto lo = std::partition_point(heights.begin(), heights.end(),
                                   [&](double z) { return z - g < -delta; });
    auto hi = std::partition_point(lo, heights.end(),
                                   [&](double z) { return z - g <= delta; });
    const size_t count = static_cast<size_t>(hi - lo);
    if (count > best_count || (count == best_count && g < best)) {
      best_count = count;
      best = g;
    }
  }
  return {best, delta};
}

SourceMotion AlignToGround(const SourceMotion& motion, const GroundPlane& plane) {
  SourceMotion out = motion;
  if (plane.height == 0.0) return out;
  for (auto& frame : out.joints) {
    for (Vec3& p : frame) p.z() -= plane.height;
  }
  for (auto& track : out.markers) {
    for (auto& frame : track) {
      for (Vec3& p : frame) p.z() -= plane.height;
    }
  }
  return out;
}

ContactSchedule ContactScores(const SourceMotion& motion, double ramp_top) {
  if (!(ramp_top > 0.0)) throw std::invalid_argument("ramp_top must be > 0");
  ContactSchedule schedule;
  const int n = motion.num_frames();
  for (int r = 0; r < kNumFootRegions; ++r) {
    schedule.c[r].assign(n, 0.0);
    for (int t = 0; t < n; ++t) {
      const auto& points = motion.markers[r][t];
      if (points.empty()) continue;
      double sum = 0.0;
      for (const Vec3& p : points) {
        sum += std::clamp((ramp_top - p.z()) / ramp_top, 0.0, 1.0);
      }
      schedule.c[r][t] = sum / static_cast<double>(points.size());
    }
  }
  return schedule;
}

double FootContactScore(const ContactSchedule& schedule) {
  const int n = schedule.num_frames();
  if (n == 0) throw std::invalid_argument("contact schedule is empty");
  double sum = 0.0;
  for (int t = 0; t < n; ++t) {
    double best = 0.0;
    for (int r = 0; r < kNumFootRegions; ++r) best = std::max(best, schedule.c[r][t]);
    sum += best;
  }
  return sum / n;
}

}  // namespace groundwork
