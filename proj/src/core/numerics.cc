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

#include "groundwork/core/numerics.h"

#include <algorithm>

namespace groundwork {

SourceMotion Resample(const SourceMotion& motion, double target_fps) {
  if (!(target_fps > 0.0)) {
    throw std::invalid_argument("target fps must be positive");
  }
  motion.Validate();
  const int src_frames = motion.num_frames();
  const double duration = (src_frames - 1) / motion.fps;
  const int out_frames =
      std::max(2, static_cast<int>(std::lround(duration * target_fps)) + 1);

  SourceMotion out;
  out.fps = target_fps;
  out.joint_names = motion.joint_names;
  out.joints.resize(out_frames);
  for (auto& track : out.markers) track.resize(out_frames);

  for (int k = 0; k < out_frames; ++k) {
    // Fractional source frame; exact at both ends.
    const double u = static_cast<double>(k) * (src_frames - 1) / (out_frames - 1);
    const int i = std::min(static_cast<int>(std::floor(u)), src_frames - 2);
    const double a = u - i;
    auto lerp = [a](const Vec3& p0, const Vec3& p1) -> Vec3 {
      return a == 0.0 ? p0 : Vec3(p0 + a * (p1 - p0));
    };
    out.joints[k].resize(motion.num_joints());
    for (int j = 0; j < motion.num_joints(); ++j) {
      out.joints[k][j] = lerp(motion.joints[i][j], motion.joints[i + 1][j]);
    }
    for (int r = 0; r < kNumFootRegions; ++r) {
      const auto& m0 = motion.markers[r][i];
      const auto& m1 = motion.markers[r][i + 1];
      out.markers[r][k].resize(m0.size());
      for (size_t m = 0; m < m0.size(); ++m) {
        out.markers[r][k][m] = lerp(m0[m], m1[m]);
      }
    }
  }
  return out;
}

}  // namespace groundwork
