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

#ifndef GROUNDWORK_RETARGET_CONFIG_H_
#define GROUNDWORK_RETARGET_CONFIG_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "groundwork/retarget/limits.h"

namespace groundwork {

// Each mode adds one group of terms to the previous one, IK aside.
enum class RetargetMode {
  kIK,                     // end-effector global match on a rigidly scaled source
  kSINK,                   // global + local match + smoothness
  kSINKFeasibility,        // + joint feasibility
  kSINKFeasibilityGround,  // + grounding
  kPhySINK,                // + anti-skating
};

std::string_view ModeName(RetargetMode mode);
// Accepts the names printed by ModeName and the short CLI spellings
// (ik, sink, +feasibility, +ground, physink), case-insensitively.
bool ParseMode(std::string_view text, RetargetMode* mode);

enum class LossTerm : int {
  kGlobalMatch = 0,
  kLocalMatch,
  kSmooth,
  kFeasibility,
  kGround,
  kSkate,
};
inline constexpr int kNumLossTerms = 6;
std::string_view LossTermName(LossTerm term);
bool TermActive(RetargetMode mode, LossTerm term);

struct LossWeights {
  double global_match = 1.0;
  double local_match = 1.0;
  double smooth = 0.002;
  double feasibility = 10.0;
  double ground = 1000.0;
  double skate = 0.3;

  double operator[](LossTerm term) const;
  LossWeights Scaled(double factor) const;
  void Validate() const;
};

struct OptimizerConfig {
  RetargetMode mode = RetargetMode::kPhySINK;
  LossWeights weights;
  int iterations = 2000;
  double step_size = 0.01;
  // The step decays geometrically to step_size * final_step_fraction at the
  // last iteration.
  double final_step_fraction = 0.01;
  // Fraction of the iterations over which the physical terms ramp in.
  double warmup_fraction = 0.25;
  double limit_margin = kDefaultLimitMargin;
  std::uint64_t seed = 0;
  // Uniform jitter (rad) added to the initial joint angles, drawn from `seed`.
  double init_noise = 1e-3;

  void Validate() const;
};

}  // namespace groundwork

#endif  // GROUNDWORK_RETARGET_CONFIG_H_
