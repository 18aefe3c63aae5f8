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

#include "groundwork/retarget/config.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace groundwork {

std::string_view ModeName(RetargetMode mode) {
  switch (mode) {
    case RetargetMode::kIK:
      return "IK";
    case RetargetMode::kSINK:
      return "SINK";
    case RetargetMode::kSINKFeasibility:
      return "SINK+feasibility";
    case RetargetMode::kSINKFeasibilityGround:
      return "SINK+feasibility+ground";
    case RetargetMode::kPhySINK:
      return "PhySINK";
  }
  return "?";
}

bool ParseMode(std::string_view text, RetargetMode* mode) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "ik") {
    *mode = RetargetMode::kIK;
  } else if (lower == "sink") {
    *mode = RetargetMode::kSINK;
  } else if (lower == "+feasibility" || lower == "sink+feasibility") {
    *mode = RetargetMode::kSINKFeasibility;
  } else if (lower == "+ground" || lower == "sink+feasibility+ground") {
    *mode = RetargetMode::kSINKFeasibilityGround;
  } else if (lower == "physink" || lower == "+skate" ||
             lower == "sink+feasibility+ground+skate") {
    *mode = RetargetMode::kPhySINK;
  } else {
    return false;
  }
  return true;
}

std::string_view LossTermName(LossTerm term) {
  switch (term) {
    case LossTerm::kGlobalMatch:
      return "global_match";
    case LossTerm::kLocalMatch:
      return "local_match";
    case LossTerm::kSmooth:
      return "smooth";
    case LossTerm::kFeasibility:
      return "feasibility";
    case LossTerm::kGround:
      return "ground";
    case LossTerm::kSkate:
      return "skate";
  }
  return "?";
}

bool TermActive(RetargetMode mode, LossTerm term) {
  if (mode == RetargetMode::kIK) return term == LossTerm::kGlobalMatch;
  switch (term) {
    case LossTerm::kGlobalMatch:
    case LossTerm::kLocalMatch:
    case LossTerm::kSmooth:
      return true;
    case LossTerm::kFeasibility:
      return mode != RetargetMode::kSINK;
    case LossTerm::kGround:
      return mode == RetargetMode::kSINKFeasibilityGround ||
             mode == RetargetMode::kPhySINK;
    case LossTerm::kSkate:
      return mode == RetargetMode::kPhySINK;
  }
  return false;
}

double LossWeights::operator[](LossTerm term) const {
  switch (term) {
    case LossTerm::kGlobalMatch:
      return global_match;
    case LossTerm::kLocalMatch:
      return local_match;
    case LossTerm::kSmooth:
      return smooth;
    case LossTerm::kFeasibility:
      return feasibility;
    case LossTerm::kGround:
      return ground;
    case LossTerm::kSkate:
      return skate;
  }
  return 0.0;
}

LossWeights LossWeights::Scaled(double factor) const {
  return {global_match * factor, local_match * factor, smooth * factor,
          feasibility * factor,  ground * factor,      skate * factor};
}

void LossWeights::Validate() const {
  for (double w : {global_match, local_match, smooth, feasibility, ground, skate}) {
    if (!(w >= 0.0)) throw std::invalid_argument("loss weights must be >= 0");
  }
}

void OptimizerConfig::Validate() const {
  weights.Validate();
  if (iterations <= 0) throw std::invalid_argument("iterations must be > 0");
  if (!(step_size > 0.0)) throw std::invalid_argument("step_size must be > 0");
  if (!(final_step_fraction > 0.0 && final_step_fraction <= 1.0)) {
    throw std::invalid_argument("final_step_fraction must be in (0, 1]");
  }
  if (!(warmup_fraction >= 0.0 && warmup_fraction < 1.0)) {
    throw std::invalid_argument("warmup_fraction must be in [0, 1)");
  }
  if (!(limit_margin > 0.0 && limit_margin <= 1.0)) {
    throw std::invalid_argument("limit_margin must lie in (0, 1]");
  }
  if (!(init_noise >= 0.0)) throw std::invalid_argument("init_noise must be >= 0");
}

}  // namespace groundwork
