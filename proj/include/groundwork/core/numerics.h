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

#ifndef GROUNDWORK_CORE_NUMERICS_H_
#define GROUNDWORK_CORE_NUMERICS_H_

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "groundwork/core/types.h"

namespace groundwork {

// Order-th time derivative by repeated forward differences, scaled by
// fps^order. Output has series.size() - order samples; sample t depends on
// inputs t..t+order. `T` is any Eigen vector type (or double).
template <typename T>
std::vector<T> FiniteDifference(std::span<const T> series, int order,
                                double fps) {
  if (order < 1 || order > 3) {
    throw std::invalid_argument("finite difference order must be 1, 2 or 3");
  }
  if (static_cast<int>(series.size()) <= order) {
    throw std::invalid_argument(
        "series too short for order-" + std::to_string(order) +
        " difference: " + std::to_string(series.size()) + " samples");
  }
  std::vector<T> current(series.begin(), series.end());
  for (int k = 0; k < order; ++k) {
    std::vector<T> next;
    next.reserve(current.size() - 1);
    for (size_t t = 0; t + 1 < current.size(); ++t) {
      next.push_back(T((current[t + 1] - current[t]) * fps));
    }
    current = std::move(next);
  }
  return current;
}

template <typename T>
std::vector<T> FiniteDifference(const std::vector<T>& series, int order,
                                double fps) {
  return FiniteDifference(std::span<const T>(series), order, fps);
}

// Linear interpolation of every joint and marker track onto a uniform grid at
// `target_fps`. The first and last timestamps are kept; the frame count is
// round(duration * target_fps) + 1.
SourceMotion Resample(const SourceMotion& motion, double target_fps);

}  // namespace groundwork

#endif  // GROUNDWORK_CORE_NUMERICS_H_
