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

#ifndef GROUNDWORK_SIGNAL_BUTTERWORTH_H_
#define GROUNDWORK_SIGNAL_BUTTERWORTH_H_

#include <span>
#include <string>
#include <vector>

#include "groundwork/core/types.h"

namespace groundwork {

struct FilterSpec {
  int order = 4;
  double cutoff_root = 3.0;  // Hz
  double cutoff_pose = 6.0;  // Hz
  double fs = 30.0;          // Hz
  std::string root_joint = "pelvis";

  // Throws std::invalid_argument.
  void Validate() const;
};

// Second-order section, a0 normalized to 1.
struct Biquad {
  double b0, b1, b2;
  double a1, a2;
};

// Digital low-pass Butterworth of even `order` as order/2 cascaded biquads,
// designed by the bilinear transform with cutoff prewarping.
std::vector<Biquad> DesignButterworthLowpass(int order, double cutoff,
                                             double fs);

// |H(f)| of the single-pass digital design; equals
// 1 / sqrt(1 + (tan(pi f / fs) / tan(pi fc / fs))^(2 order)).
double ButterworthMagnitude(int order, double cutoff, double fs, double f);

// Zero-phase forward-backward low-pass. The series is padded at both ends by
// odd reflection of length 3 * order, each pass starts from the steady state
// of its first sample, and the result is symmetrized over time reversal so
// filtering a reversed series gives the reversed output. Steady-state
// magnitude response is ButterworthMagnitude^2.
std::vector<double> ButterworthZeroPhase(std::span<const double> series,
                                         int order, double cutoff, double fs);

// Smooths every joint and marker channel per axis. The root joint track
// (FilterSpec::root_joint) uses cutoff_root, everything else cutoff_pose. The
// filter is designed at the motion's own frame rate.
SourceMotion SmoothMotion(const SourceMotion& motion, const FilterSpec& spec);

}  // namespace groundwork

#endif  // GROUNDWORK_SIGNAL_BUTTERWORTH_H_
