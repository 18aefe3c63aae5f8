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

#include "groundwork/signal/butterworth.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace groundwork {

namespace {

void CheckDesign(int order, double cutoff, double fs) {
  if (order < 2 || order % 2 != 0) {
    throw std::invalid_argument("filter order must be even and >= 2");
  }
  if (!(fs > 0.0)) throw std::invalid_argument("sampling rate must be positive");
  if (!(cutoff > 0.0) || !(cutoff < fs / 2.0)) {
    throw std::invalid_argument("cutoff " + std::to_string(cutoff) +
                                " Hz must lie in (0, Nyquist = " +
                                std::to_string(fs / 2.0) + " Hz)");
  }
}

// Direct form II transposed, started at the steady state for a constant input
// equal to `x0` (every section has unit DC gain).
void FilterInPlace(const std::vector<Biquad>& sections, std::vector<double>& x) {
  if (x.empty()) return;
  const double x0 = x.front();
  for (const Biquad& s : sections) {
    double z2 = (s.b2 - s.a2) * x0;
    double z1 = (s.b1 - s.a1) * x0 + z2;
    for (double& v : x) {
      const double in = v;
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      v = out;
    }
  }
}

std::vector<double> ForwardBackward(const std::vector<Biquad>& sections,
                                    std::span<const double> series, int pad) {
  const int n = static_cast<int>(series.size());
  std::vector<double> ext;
  ext.reserve(n + 2 * pad);
  const double first = series.front();
  const double last = series.back();
  for (int i = pad; i >= 1; --i) ext.push_back(2.0 * first - series[i]);
  ext.insert(ext.end(), series.begin(), series.end());
  for (int i = 1; i <= pad; ++i) ext.push_back(2.0 * last - series[n - 1 - i]);

  FilterInPlace(sections, ext);
  std::reverse(ext.begin(), ext.end());
  FilterInPlace(sections, ext);
  std::reverse(ext.begin(), ext.end());
  return {ext.begin() + pad, ext.begin() + pad + n};
}

}  // namespace

void FilterSpec::Validate() const {
  CheckDesign(order, cutoff_root, fs);
  CheckDesign(order, cutoff_pose, fs);
  if (root_joint.empty()) throw std::invalid_argument("root joint name is empty");
}

std::vector<Biquad> DesignButterworthLowpass(int order, double cutoff,
                                             double fs) {
  CheckDesign(order, cutoff, fs);
  const double k = std::tan(std::numbers::pi * cutoff / fs);
  const double k2 = k * k;
  std::vector<Biquad> sections;
  for (int i = 1; i <= order / 2; ++i) {
    // Damping of the i-th conjugate pole pair of the analog prototype.
    const double damping =
        2.0 * std::sin(std::numbers::pi * (2.0 * i - 1.0) / (2.0 * order));
    const double norm = 1.0 / (1.0 + damping * k + k2);
    Biquad s;
    s.b0 = k2 * norm;
    s.b1 = 2.0 * s.b0;
    s.b2 = s.b0;
    s.a1 = 2.0 * (k2 - 1.0) * norm;
    s.a2 = (1.0 - damping * k + k2) * norm;
    sections.push_back(s);
  }
  return sections;
}

double ButterworthMagnitude(int order, double cutoff, double fs, double f) {
  const double ratio = std::tan(std::numbers::pi * f / fs) /
                       std::tan(std::numbers::pi * cutoff / fs);
  return 1.0 / std::sqrt(1.0 + std::pow(ratio, 2.0 * order));
}

std::vector<double> ButterworthZeroPhase(std::span<const double> series,
                                         int order, double cutoff, double fs) {
  const auto sections = DesignButterworthLowpass(order, cutoff, fs);
  const int pad = 3 * order;
  const int n = static_cast<int>(series.size());
  if (n < pad || n < 2) {
    throw std::invalid_argument("series too short for zero-phase filtering: " +
                                std::to_string(n) + " samples, need " +
                                std::to_string(pad));
  }
  // Reflection needs pad + 1 samples; shorter series use a shorter pad.
  const int used_pad = std::min(pad, n - 1);

  std::vector<double> reversed(series.rbegin(), series.rend());
  std::vector<double> a = ForwardBackward(sections, series, used_pad);
  std::vector<double> b = ForwardBackward(sections, reversed, used_pad);
  for (int i = 0; i < n; ++i) a[i] = 0.5 * (a[i] + b[n - 1 - i]);
  return a;
}

SourceMotion SmoothMotion(const SourceMotion& motion, const FilterSpec& spec) {
  const int root = motion.JointIndex(spec.root_joint);
  if (root < 0) {
    throw std::invalid_argument("root joint \"" + spec.root_joint +
                                "\" not present in motion");
  }
  const double fs = motion.fps;
  const int n = motion.num_frames();
  SourceMotion out = motion;
  std::vector<double> channel(n);

  auto smooth_track = [&](auto&& get, double cutoff) {
    for (int axis = 0; axis < 3; ++axis) {
      for (int t = 0; t < n; ++t) channel[t] = get(t)[axis];
      const auto filtered = ButterworthZeroPhase(channel, spec.order, cutoff, fs);
      for (int t = 0; t < n; ++t) get(t)[axis] = filtered[t];
    }
  };

  for (int j = 0; j < motion.num_joints(); ++j) {
    const double cutoff = j == root ? spec.cutoff_root : spec.cutoff_pose;
    smooth_track([&](int t) -> Vec3& { return out.joints[t][j]; }, cutoff);
  }
  for (int r = 0; r < kNumFootRegions; ++r) {
    const size_t count = n > 0 ? out.markers[r][0].size() : 0;
    for (size_t m = 0; m < count; ++m) {
      smooth_track([&](int t) -> Vec3& { return out.markers[r][t][m]; },
                   spec.cutoff_pose);
    }
  }
  return out;
}

}  // namespace groundwork
