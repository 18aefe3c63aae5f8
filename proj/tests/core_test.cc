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

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "groundwork/core/io.h"
#include "groundwork/core/numerics.h"
#include "groundwork/core/types.h"
#include "groundwork/synth/humanoid.h"
#include "test_support.h"

namespace groundwork {
namespace {

using testing::MakeMotion;
using testing::ScratchDir;

constexpr double kPi = 3.14159265358979323846;

TEST(FiniteDifferenceTest, ConstantSeriesIsZero) {
  const std::vector<Vec3> x(10, Vec3(1.0, -2.0, 3.0));
  for (int order = 1; order <= 3; ++order) {
    const auto d = FiniteDifference(x, order, 30.0);
    ASSERT_EQ(d.size(), x.size() - order);
    for (const Vec3& v : d) EXPECT_EQ(v.norm(), 0.0);
  }
}

TEST(FiniteDifferenceTest, RampGivesSlopeTimesFps) {
  std::vector<Vec3> x;
  for (int k = 0; k < 12; ++k) x.emplace_back(2.0 * k, 0.0, -2.0 * k);
  for (const Vec3& v : FiniteDifference(x, 1, 30.0)) {
    EXPECT_DOUBLE_EQ(v.x(), 60.0);
    EXPECT_DOUBLE_EQ(v.z(), -60.0);
  }
}

// Third forward difference of k^3 is exactly 3! = 6 per frame^3.
TEST(FiniteDifferenceTest, CubicMatchesSymbolicThirdDerivative) {
  std::vector<double> x;
  for (int k = 0; k < 20; ++k) x.push_back(static_cast<double>(k) * k * k);
  const auto d = FiniteDifference(x, 3, 30.0);
  ASSERT_EQ(d.size(), 17u);
  for (double v : d) EXPECT_NEAR(v, 6.0 * 30.0 * 30.0 * 30.0, 1e-6);
}

TEST(FiniteDifferenceTest, AnnihilatesLowDegreePolynomials) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    for (int order = 1; order <= 3; ++order) {
      std::vector<double> c(order);
      for (double& ci : c) ci = u(rng);
      std::vector<double> x;
      for (int k = 0; k < 30; ++k) {
        const double t = k / 30.0;
        double v = 0.0;
        for (int p = order - 1; p >= 0; --p) v = v * t + c[p];
        x.push_back(v);
      }
      for (double v : FiniteDifference(x, order, 30.0)) EXPECT_NEAR(v, 0.0, 1e-6);
    }
  }
}

TEST(FiniteDifferenceTest, IsLinear) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vec3> x, y, z;
    const double a = u(rng), b = u(rng);
    for (int k = 0; k < 16; ++k) {
      x.emplace_back(u(rng), u(rng), u(rng));
      y.emplace_back(u(rng), u(rng), u(rng));
      z.push_back(a * x.back() + b * y.back());
    }
    for (int order = 1; order <= 3; ++order) {
      const auto dx = FiniteDifference(x, order, 30.0);
      const auto dy = FiniteDifference(y, order, 30.0);
      const auto dz = FiniteDifference(z, order, 30.0);
      for (size_t k = 0; k < dz.size(); ++k) {
        const double scale = std::max(1.0, dz[k].norm());
        EXPECT_LE((dz[k] - (a * dx[k] + b * dy[k])).norm() / scale, 1e-9);
      }
    }
  }
}

TEST(FiniteDifferenceTest, RejectsBadOrderAndShortSeries) {
  const std::vector<double> x = {0.0, 1.0, 2.0};
  EXPECT_THROW(FiniteDifference(x, 0, 30.0), std::invalid_argument);
  EXPECT_THROW(FiniteDifference(x, 4, 30.0), std::invalid_argument);
  EXPECT_THROW(FiniteDifference(x, 3, 30.0), std::invalid_argument);
  EXPECT_EQ(FiniteDifference(x, 2, 30.0).size(), 1u);
}

TEST(ResampleTest, SameRateIsIdentity) {
  const SourceMotion m = MakeMotion(40, 30.0, 3, [](double t, int i) {
    return Vec3(std::sin(t + i), std::cos(2 * t), t * i);
  });
  const SourceMotion r = Resample(m, 30.0);
  ASSERT_EQ(r.num_frames(), m.num_frames());
  for (int t = 0; t < m.num_frames(); ++t) {
    for (int i = 0; i < 3; ++i) EXPECT_LE((r.joints[t][i] - m.joints[t][i]).norm(), 1e-9);
    for (int reg = 0; reg < kNumFootRegions; ++reg) {
      for (size_t k = 0; k < m.markers[reg][t].size(); ++k) {
        EXPECT_LE((r.markers[reg][t][k] - m.markers[reg][t][k]).norm(), 1e-9);
      }
    }
  }
}

TEST(ResampleTest, DoublingRateInsertsExactMidpoints) {
  const SourceMotion m = MakeMotion(3, 10.0, 2, [](double t, int i) {
    return Vec3(3.0 * t + i, -t, 0.5);
  });
  const SourceMotion r = Resample(m, 20.0);
  ASSERT_EQ(r.num_frames(), 5);
  EXPECT_DOUBLE_EQ(r.fps, 20.0);
  for (int k = 0; k < 5; ++k) {
    const double t = k / 20.0;
    for (int i = 0; i < 2; ++i) {
      EXPECT_NEAR((r.joints[k][i] - Vec3(3.0 * t + i, -t, 0.5)).norm(), 0.0, 1e-12);
    }
  }
}

TEST(ResampleTest, DownsampledSinusoidMatchesAnalyticSamples) {
  auto f = [](double t, int i) {
    return Vec3(std::sin(2 * kPi * 0.7 * t + i), 0.3 * std::cos(2 * kPi * 1.3 * t), 1.0);
  };
  const SourceMotion m = MakeMotion(121, 60.0, 2, f);
  const SourceMotion r = Resample(m, 30.0);
  ASSERT_EQ(r.num_frames(), 61);
  for (int k = 0; k < r.num_frames(); ++k) {
    for (int i = 0; i < 2; ++i) {
      EXPECT_LE((r.joints[k][i] - f(k / 30.0, i)).norm(), 1e-6);
    }
  }
}

TEST(ResampleTest, RejectsNonPositiveRate) {
  const SourceMotion m = MakeMotion(5, 30.0, 1, [](double, int) { return Vec3::Zero(); });
  EXPECT_THROW(Resample(m, 0.0), std::invalid_argument);
}

TEST(SourceMotionIoTest, RoundTripIsExact) {
  ScratchDir dir;
  const SourceMotion m = MakeMotion(120, 30.0, 4, [](double t, int i) {
    return Vec3(std::sin(1.7 * t) / 3.0, i * 0.1 + t, std::exp(-t));
  });
  SaveSourceMotion(m, dir / "walk.json");
  const SourceMotion back = LoadSourceMotion(dir / "walk.json");
  EXPECT_EQ(back.num_frames(), 120);
  EXPECT_EQ(back.joint_names, m.joint_names);
  for (int t = 0; t < m.num_frames(); ++t) {
    for (int i = 0; i < 4; ++i) EXPECT_LE((back.joints[t][i] - m.joints[t][i]).norm(), 1e-9);
    for (int r = 0; r < kNumFootRegions; ++r) {
      ASSERT_EQ(back.markers[r][t].size(), m.markers[r][t].size());
      for (size_t k = 0; k < m.markers[r][t].size(); ++k) {
        EXPECT_LE((back.markers[r][t][k] - m.markers[r][t][k]).norm(), 1e-9);
      }
    }
  }
}

TEST(SourceMotionIoTest, NanIsReportedWithItsFrame) {
  ScratchDir dir;
  SourceMotion m = MakeMotion(20, 30.0, 2, [](double t, int) { return Vec3(t, 0, 1); });
  m.joints[7][1].y() = 12345.5;
  std::string text = SourceMotionToJson(m).dump();
  const size_t at = text.find("12345.5");
  ASSERT_NE(at, std::string::npos);
  text.replace(at, 7, "NaN");
  WriteTextFile(text, dir / "bad.json");
  try {
    LoadSourceMotion(dir / "bad.json");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("frame 7"), std::string::npos) << e.what();
  }
}

TEST(SourceMotionIoTest, TwoFramesAreTooFew) {
  ScratchDir dir;
  const SourceMotion m = MakeMotion(2, 30.0, 2, [](double t, int) { return Vec3(t, 0, 1); });
  WriteJsonFile(SourceMotionToJson(m), dir / "short.json");
  try {
    LoadSourceMotion(dir / "short.json");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("too few frames"), std::string::npos) << e.what();
  }
}

TEST(SourceMotionIoTest, MalformedJsonAndMissingFile) {
  ScratchDir dir;
  WriteTextFile("{\"fps\": 30, \"joint_names\": [", dir / "cut.json");
  EXPECT_THROW(LoadSourceMotion(dir / "cut.json"), FormatError);
  EXPECT_THROW(LoadSourceMotion(dir / "absent.json"), IoError);
}

TEST(RetargetedMotionIoTest, RoundTripIsExact) {
  ScratchDir dir;
  const RetargetedMotion m = synth::GenerateMotion({synth::MotionKind::kWalk});
  SaveRetargetedMotion(m, dir / "out.json");
  const RetargetedMotion back = LoadRetargetedMotion(dir / "out.json");
  ASSERT_EQ(back.num_frames(), m.num_frames());
  EXPECT_EQ(back.joint_names, m.joint_names);
  for (int t = 0; t < m.num_frames(); ++t) {
    EXPECT_LE((back.q[t] - m.q[t]).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LE((back.root_pos[t] - m.root_pos[t]).norm(), 1e-9);
    EXPECT_LE(back.root_rot[t].angularDistance(m.root_rot[t]), 1e-9);
  }
}

TEST(RetargetedMotionIoTest, UnwritablePathIsAnIoError) {
  const RetargetedMotion m = synth::GenerateMotion({synth::MotionKind::kStand});
  EXPECT_THROW(SaveRetargetedMotion(m, "/nonexistent_dir/sub/out.json"), IoError);
}

TEST(RetargetedMotionIoTest, RootOnlyMotionIsValid) {
  ScratchDir dir;
  RetargetedMotion m;
  m.fps = 30.0;
  for (int t = 0; t < 3; ++t) {
    m.q.push_back(Eigen::VectorXd(0));
    m.root_pos.emplace_back(0.1 * t, 0.0, 1.0);
    m.root_rot.push_back(Quat::Identity());
  }
  SaveRetargetedMotion(m, dir / "root.json");
  const RetargetedMotion back = LoadRetargetedMotion(dir / "root.json");
  EXPECT_EQ(back.num_frames(), 3);
  EXPECT_EQ(back.q[2].size(), 0);
  EXPECT_DOUBLE_EQ(back.root_pos[2].x(), 0.2);
}

TEST(RobotModelIoTest, RoundTripPreservesStructure) {
  ScratchDir dir;
  const RobotModel model = synth::TestHumanoid();
  SaveRobotModel(model, dir / "robot.json");
  const RobotModel back = LoadRobotModel(dir / "robot.json");
  ASSERT_EQ(back.num_bodies(), model.num_bodies());
  ASSERT_EQ(back.num_joints(), model.num_joints());
  for (int b = 0; b < model.num_bodies(); ++b) {
    EXPECT_EQ(back.bodies()[b].name, model.bodies()[b].name);
    EXPECT_EQ(back.bodies()[b].parent, model.bodies()[b].parent);
    EXPECT_LE((back.bodies()[b].offset - model.bodies()[b].offset).norm(), 1e-12);
  }
  for (int j = 0; j < model.num_joints(); ++j) {
    EXPECT_EQ(back.joints()[j].body, model.joints()[j].body);
    EXPECT_EQ(back.joints()[j].q_max, model.joints()[j].q_max);
    EXPECT_EQ(back.joints()[j].v_max, model.joints()[j].v_max);
  }
  EXPECT_EQ(back.balance_bodies(), model.balance_bodies());
}

TEST(FormatNumberTest, ReadsBackExactly) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng) * std::pow(10.0, i % 9 - 4);
    EXPECT_EQ(std::stod(FormatNumber(x)), x);
  }
}

}  // namespace
}  // namespace groundwork
