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

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "groundwork/signal/butterworth.h"
#include "test_support.h"

namespace groundwork {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> Sine(int n, double f, double fs, double amp = 1.0, double phase = 0.3) {
  std::vector<double> x(n);
  for (int k = 0; k < n; ++k) x[k] = amp * std::sin(2 * kPi * f * k / fs + phase);
  return x;
}

// Least-squares amplitude of the f component over samples [lo, hi).
double Amplitude(const std::vector<double>& x, double f, double fs, int lo, int hi) {
  double ss = 0, sc = 0, cc = 0, xs = 0, xc = 0;
  for (int k = lo; k < hi; ++k) {
    const double s = std::sin(2 * kPi * f * k / fs), c = std::cos(2 * kPi * f * k / fs);
    ss += s * s;
    sc += s * c;
    cc += c * c;
    xs += x[k] * s;
    xc += x[k] * c;
  }
  const double det = ss * cc - sc * sc;
  const double a = (xs * cc - xc * sc) / det;
  const double b = (xc * ss - xs * sc) / det;
  return std::hypot(a, b);
}

TEST(ButterworthDesignTest, CascadeMatchesAnalyticMagnitude) {
  for (double fc : {3.0, 6.0}) {
    const auto sections = DesignButterworthLowpass(4, fc, 30.0);
    ASSERT_EQ(sections.size(), 2u);
    for (double f = 0.0; f < 15.0; f += 0.37) {
      const std::complex<double> z = std::polar(1.0, 2 * kPi * f / 30.0);
      std::complex<double> h = 1.0;
      for (const Biquad& s : sections) {
        const std::complex<double> zi = 1.0 / z;
        h *= (s.b0 + s.b1 * zi + s.b2 * zi * zi) / (1.0 + s.a1 * zi + s.a2 * zi * zi);
      }
      const double tr = std::tan(kPi * f / 30.0) / std::tan(kPi * fc / 30.0);
      const double expected = 1.0 / std::sqrt(1.0 + std::pow(tr, 8));
      EXPECT_NEAR(std::abs(h), expected, 1e-9) << "f=" << f;
      EXPECT_NEAR(ButterworthMagnitude(4, fc, 30.0, f), expected, 1e-12);
    }
  }
}

TEST(ButterworthDesignTest, HalfPowerAtCutoff) {
  EXPECT_NEAR(ButterworthMagnitude(4, 3.0, 30.0, 3.0), std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(ButterworthMagnitude(6, 6.0, 30.0, 6.0), std::sqrt(0.5), 1e-12);
}

TEST(ButterworthZeroPhaseTest, ConstantIsPreserved) {
  const std::vector<double> x(50, 1.234);
  for (double v : ButterworthZeroPhase(x, 4, 3.0, 30.0)) EXPECT_NEAR(v, 1.234, 1e-9);
}

TEST(ButterworthZeroPhaseTest, StopbandToneFollowsSquaredResponse) {
  const int n = 3000;
  const std::vector<double> y = ButterworthZeroPhase(Sine(n, 10.0, 30.0), 4, 3.0, 30.0);
  const double h = ButterworthMagnitude(4, 3.0, 30.0, 10.0);
  EXPECT_NEAR(Amplitude(y, 10.0, 30.0, n / 3, 2 * n / 3) / (h * h), 1.0, 0.02);
}

TEST(ButterworthZeroPhaseTest, PassbandToneKeepsAmplitude) {
  const int n = 600;
  const std::vector<double> y = ButterworthZeroPhase(Sine(n, 0.5, 30.0), 4, 3.0, 30.0);
  EXPECT_NEAR(Amplitude(y, 0.5, 30.0, 200, 400), 1.0, 0.01);
}

TEST(ButterworthZeroPhaseTest, NoPhaseLag) {
  const int n = 600;
  const std::vector<double> x = Sine(n, 2.0, 30.0);
  const std::vector<double> y = ButterworthZeroPhase(x, 4, 6.0, 30.0);
  const double h2 = std::pow(ButterworthMagnitude(4, 6.0, 30.0, 2.0), 2);
  for (int k = 200; k < 400; ++k) EXPECT_NEAR(y[k], h2 * x[k], 1e-6);
}

TEST(ButterworthZeroPhaseTest, TimeReversalSymmetry) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(40 + 13 * trial);
    for (double& v : x) v = g(rng);
    std::vector<double> rev(x.rbegin(), x.rend());
    const auto y = ButterworthZeroPhase(x, 4, 3.0, 30.0);
    auto yr = ButterworthZeroPhase(rev, 4, 3.0, 30.0);
    std::reverse(yr.begin(), yr.end());
    ASSERT_EQ(y.size(), x.size());
    for (size_t k = 0; k < y.size(); ++k) EXPECT_NEAR(y[k], yr[k], 1e-9);
  }
}

TEST(ButterworthZeroPhaseTest, Linear) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(120), y(120), z(120);
  const double a = 1.7, b = -0.4;
  for (int k = 0; k < 120; ++k) {
    x[k] = g(rng);
    y[k] = g(rng);
    z[k] = a * x[k] + b * y[k];
  }
  const auto fx = ButterworthZeroPhase(x, 4, 6.0, 30.0);
  const auto fy = ButterworthZeroPhase(y, 4, 6.0, 30.0);
  const auto fz = ButterworthZeroPhase(z, 4, 6.0, 30.0);
  for (int k = 0; k < 120; ++k) EXPECT_NEAR(fz[k], a * fx[k] + b * fy[k], 1e-9);
}

TEST(ButterworthZeroPhaseTest, PreservesMeanOfNoisyConstant) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g(0.0, 0.1);
  const int n = 4000;
  std::vector<double> x(n);
  for (double& v : x) v = 2.0 + g(rng);
  const auto y = ButterworthZeroPhase(x, 4, 3.0, 30.0);
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  EXPECT_NEAR(my, mx, 0.1 / std::sqrt(n));
  EXPECT_NEAR(my, 2.0, 3 * 0.1 / std::sqrt(n));
}

TEST(ButterworthZeroPhaseTest, RejectsBadArguments) {
  const std::vector<double> x(40, 0.0);
  EXPECT_THROW(ButterworthZeroPhase(std::vector<double>(11, 0.0), 4, 3.0, 30.0),
               std::invalid_argument);
  EXPECT_NO_THROW(ButterworthZeroPhase(std::vector<double>(12, 0.0), 4, 3.0, 30.0));
  EXPECT_THROW(ButterworthZeroPhase(x, 4, 15.0, 30.0), std::invalid_argument);
  EXPECT_THROW(ButterworthZeroPhase(x, 4, 0.0, 30.0), std::invalid_argument);
  EXPECT_THROW(ButterworthZeroPhase(x, 3, 3.0, 30.0), std::invalid_argument);
}

TEST(FilterSpecTest, Validation) {
  FilterSpec spec;
  EXPECT_NO_THROW(spec.Validate());
  spec.order = 0;
  EXPECT_THROW(spec.Validate(), std::invalid_argument);
  spec = FilterSpec{};
  spec.cutoff_pose = 16.0;
  EXPECT_THROW(spec.Validate(), std::invalid_argument);
}

SourceMotion PelvisMotion(int frames, const std::function<Vec3(double, int)>& f) {
  SourceMotion m = testing::MakeMotion(frames, 30.0, 3, f);
  m.joint_names[0] = "pelvis";
  return m;
}

TEST(SmoothMotionTest, ConstantMotionUnchanged) {
  const SourceMotion m = PelvisMotion(60, [](double, int i) { return Vec3(i, -i, 0.5 * i); });
  const SourceMotion s = SmoothMotion(m, FilterSpec{});
  for (int t = 0; t < 60; ++t) {
    for (int i = 0; i < 3; ++i) EXPECT_LE((s.joints[t][i] - m.joints[t][i]).norm(), 1e-9);
    for (int r = 0; r < kNumFootRegions; ++r) {
      EXPECT_LE((s.markers[r][t][1] - m.markers[r][t][1]).norm(), 1e-9);
    }
  }
}

TEST(SmoothMotionTest, SpikeIsHalvedAtLeast) {
  SourceMotion m = PelvisMotion(90, [](double, int) { return Vec3::Zero(); });
  m.joints[45][1].z() = 1.0;
  const SourceMotion s = SmoothMotion(m, FilterSpec{});
  double peak = 0.0;
  for (int t = 0; t < 90; ++t) peak = std::max(peak, std::abs(s.joints[t][1].z()));
  EXPECT_LT(peak, 0.5);
  EXPECT_GT(peak, 0.0);
}

TEST(SmoothMotionTest, SecondPassChangesLess) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(0.0, 0.05);
  SourceMotion m = PelvisMotion(150, [](double t, int i) {
    return Vec3(std::sin(t + i), std::cos(0.7 * t), 0.9);
  });
  for (auto& row : m.joints)
    for (Vec3& p : row) p += Vec3(g(rng), g(rng), g(rng));
  const SourceMotion once = SmoothMotion(m, FilterSpec{});
  const SourceMotion twice = SmoothMotion(once, FilterSpec{});
  double d1 = 0.0, d2 = 0.0;
  for (int t = 30; t < 120; ++t) {
    for (int i = 0; i < 3; ++i) {
      d1 += (once.joints[t][i] - m.joints[t][i]).squaredNorm();
      d2 += (twice.joints[t][i] - once.joints[t][i]).squaredNorm();
    }
  }
  EXPECT_LT(d2, d1);
}

TEST(SmoothMotionTest, RootUsesRootCutoff) {
  const SourceMotion m = PelvisMotion(120, [](double t, int) {
    return Vec3(std::sin(2 * kPi * 4.0 * t), 0.0, 0.0);
  });
  const SourceMotion s = SmoothMotion(m, FilterSpec{});
  std::vector<double> x;
  for (int t = 0; t < 120; ++t) x.push_back(m.joints[t][0].x());
  const auto root = ButterworthZeroPhase(x, 4, 3.0, 30.0);
  const auto pose = ButterworthZeroPhase(x, 4, 6.0, 30.0);
  for (int t = 0; t < 120; ++t) {
    EXPECT_NEAR(s.joints[t][0].x(), root[t], 1e-12);
    EXPECT_NEAR(s.joints[t][1].x(), pose[t], 1e-12);
  }
}

TEST(SmoothMotionTest, MissingRootJointIsAnError) {
  const SourceMotion m = testing::MakeMotion(60, 30.0, 2, [](double, int) { return Vec3::Zero(); });
  EXPECT_THROW(SmoothMotion(m, FilterSpec{}), std::invalid_argument);
}

}  // namespace
}  // namespace groundwork
