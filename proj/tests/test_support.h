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

#ifndef GROUNDWORK_TESTS_TEST_SUPPORT_H_
#define GROUNDWORK_TESTS_TEST_SUPPORT_H_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "groundwork/curation/support.h"
#include "groundwork/kinematics/correspondence.h"
#include "groundwork/kinematics/forward_kinematics.h"
#include "groundwork/retarget/limits.h"
#include "groundwork/retarget/losses.h"
#include "groundwork/retarget/retarget.h"
#include "groundwork/synth/humanoid.h"

namespace groundwork::testing {

// Fresh directory under the system temp dir, removed on destruction.
class ScratchDir {
 public:
  ScratchDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("groundwork_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Motion whose joint i and every marker follow f(t, i) at `fps`.
inline SourceMotion MakeMotion(int frames, double fps, int joints,
                               const std::function<Vec3(double, int)>& f) {
  SourceMotion m;
  m.fps = fps;
  for (int i = 0; i < joints; ++i) m.joint_names.push_back("j" + std::to_string(i));
  for (int k = 0; k < frames; ++k) {
    const double t = k / fps;
    std::vector<Vec3> row;
    for (int i = 0; i < joints; ++i) row.push_back(f(t, i));
    m.joints.push_back(row);
    for (int r = 0; r < kNumFootRegions; ++r) {
      m.markers[r].push_back({f(t, 100 + r), f(t, 200 + r)});
    }
  }
  return m;
}

// Exhaustive vote: every per-frame minimum is a candidate, every marker of
// every frame votes for each candidate whose band holds it.
inline double BruteForceGroundHeight(const SourceMotion& m, double delta) {
  std::vector<double> candidates;
  for (int t = 0; t < m.num_frames(); ++t) {
    double lowest = 1e300;
    for (const auto& track : m.markers)
      for (const Vec3& p : track[t]) lowest = std::min(lowest, p.z());
    candidates.push_back(lowest);
  }
  double best = 0.0;
  long best_count = -1;
  for (double g : candidates) {
    long count = 0;
    for (const auto& track : m.markers)
      for (const auto& frame : track)
        for (const Vec3& p : frame) count += std::abs(p.z() - g) <= delta;
    if (count > best_count || (count == best_count && g < best)) {
      best_count = count;
      best = g;
    }
  }
  return best;
}

inline double Cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a - o).x() * (b - o).y() - (a - o).y() * (b - o).x();
}

inline double SegmentDistance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  const double s = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (a + s * ab - p).norm();
}

inline bool InTriangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
  const double d1 = Cross(a, b, p), d2 = Cross(b, c, p), d3 = Cross(c, a, p);
  const bool neg = d1 < 0 || d2 < 0 || d3 < 0;
  const bool pos = d1 > 0 || d2 > 0 || d3 > 0;
  return !(neg && pos);
}

// Hull vertices by exclusion: a point is a vertex unless it duplicates an
// earlier point, lies on a segment between two others or inside a triangle
// of three others.
inline std::vector<Vec2> BruteForceHullVertices(const std::vector<Vec2>& pts,
                                                double eps = 1e-12) {
  std::vector<Vec2> out;
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) {
    bool vertex = true;
    for (int j = 0; j < n && vertex; ++j) {
      if (j == i) continue;
      if ((pts[j] - pts[i]).norm() <= eps && j < i) vertex = false;
      for (int k = j + 1; k < n && vertex; ++k) {
        if (k == i) continue;
        if ((pts[j] - pts[i]).norm() <= eps || (pts[k] - pts[i]).norm() <= eps) continue;
        if (std::abs(Cross(pts[j], pts[k], pts[i])) <= eps &&
            SegmentDistance(pts[i], pts[j], pts[k]) <= eps) {
          vertex = false;
        }
        for (int l = k + 1; l < n && vertex; ++l) {
          if (l == i) continue;
          if (std::abs(Cross(pts[j], pts[k], pts[l])) > eps &&
              InTriangle(pts[i], pts[j], pts[k], pts[l])) {
            vertex = false;
          }
        }
      }
    }
    if (vertex) out.push_back(pts[i]);
  }
  return out;
}

// Distance from p to the convex hull of pts: zero inside any triangle of the
// points (which cover the hull), otherwise the nearest segment between two
// points (hull edges are among them, every such segment lies in the hull).
inline double BruteForceSupportDistance(const Vec2& p, const std::vector<Vec2>& pts) {
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (InTriangle(p, pts[i], pts[j], pts[k]) &&
            std::abs(Cross(pts[i], pts[j], pts[k])) > 0.0) {
          return 0.0;
        }
  double d = n == 1 ? (p - pts[0]).norm() : 1e300;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d = std::min(d, SegmentDistance(p, pts[i], pts[j]));
  return d;
}

inline const RobotModel& Humanoid() {
  static const RobotModel model = synth::TestHumanoid();
  return model;
}

// A random smooth trajectory on the test humanoid, a noisy target rendered
// from a second trajectory, and random contact scores.
struct RandomInstance {
  RetargetProblem problem;
  DecisionVariables vars;
};

inline DecisionVariables RandomTrajectory(std::mt19937_64& rng, int frames,
                                          double amplitude) {
  const RobotModel& model = Humanoid();
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int nq = model.num_joints();
  const Eigen::VectorXd a = Eigen::VectorXd::NullaryExpr(nq, [&] { return 0.5 * u(rng); });
  const Eigen::VectorXd b = Eigen::VectorXd::NullaryExpr(nq, [&] { return amplitude * u(rng); });
  const Eigen::VectorXd w = Eigen::VectorXd::NullaryExpr(nq, [&] { return 1.5 + u(rng); });
  const Vec3 p0(u(rng), u(rng), 0.9 + 0.1 * u(rng));
  const Vec3 v(0.3 * u(rng), 0.3 * u(rng), 0.05 * u(rng));
  const Vec3 axis = Vec3(u(rng), u(rng), u(rng)).normalized();
  const double yaw0 = 3.0 * u(rng);
  DecisionVariables vars;
  for (int t = 0; t < frames; ++t) {
    const double s = static_cast<double>(t);
    Eigen::VectorXd q(nq);
    for (int j = 0; j < nq; ++j) q[j] = a[j] + b[j] * std::sin(w[j] * s + j);
    vars.q.push_back(q);
    vars.root_pos.push_back(p0 + s * v +
                            Vec3(0.03 * std::sin(0.9 * s), 0.03 * std::cos(0.7 * s),
                                 0.02 * std::sin(1.3 * s)));
    vars.root_rot.emplace_back(Eigen::AngleAxisd(yaw0 + 0.1 * s, Vec3::UnitZ()) *
                               Eigen::AngleAxisd(0.2 * std::sin(s), axis));
  }
  return vars;
}

inline RandomInstance MakeRandomInstance(std::uint64_t seed, int frames = 6) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const RobotModel& model = Humanoid();
  RandomInstance inst;
  inst.vars = RandomTrajectory(rng, frames, 0.6);
  const DecisionVariables other = RandomTrajectory(rng, frames, 0.4);
  const FkResult fk = ForwardKinematics(model, other);

  SourceMotion target;
  target.fps = 30.0;
  target.joint_names = synth::SourceJointNames();
  const JointCorrespondence corr =
      BuildCorrespondence(synth::TestCorrespondence(), model, target.joint_names);
  for (int t = 0; t < frames; ++t) {
    std::vector<Vec3> joints(target.joint_names.size());
    for (const CorrespondencePair& p : corr.pairs) {
      joints[p.source] = fk[t].pos[p.body] + 0.05 * Vec3(u(rng), u(rng), u(rng));
    }
    target.joints.push_back(joints);
  }
  for (int r = 0; r < kNumFootRegions; ++r) {
    for (int t = 0; t < frames; ++t) target.markers[r].push_back({fk[t].sites[r]});
    inst.problem.contacts.c[r].resize(frames);
    for (int t = 0; t < frames; ++t) inst.problem.contacts.c[r][t] = 0.6 + 0.4 * u(rng);
  }
  inst.problem.model = &model;
  inst.problem.target = std::move(target);
  inst.problem.corr = corr;
  return inst;
}

// Smallest distance of any L1 / hinge argument of the objective from its
// kink. Central differences are only meaningful when this exceeds the step.
inline double KinkDistance(const RandomInstance& inst, double margin) {
  const RobotModel& model = *inst.problem.model;
  const DecisionVariables& v = inst.vars;
  const double fps = inst.problem.target.fps;
  const int n = v.num_frames();
  const FkResult fk = ForwardKinematics(model, v);
  double d = 1e300;
  for (int t = 0; t < n; ++t) {
    for (const CorrespondencePair& p : inst.problem.corr.pairs) {
      const Vec3 diff = fk[t].pos[p.body] - inst.problem.target.joints[t][p.source];
      d = std::min(d, diff.cwiseAbs().minCoeff());
    }
    for (int j = 0; j < model.num_joints(); ++j) {
      const Band pb = PositionBand(model.joints()[j], margin);
      d = std::min({d, std::abs(v.q[t][j] - pb.lo), std::abs(v.q[t][j] - pb.hi)});
      if (t + 1 < n) {
        const Band vb = VelocityBand(model.joints()[j], margin);
        const double vel = fps * (v.q[t + 1][j] - v.q[t][j]);
        d = std::min({d, std::abs(vel - vb.lo) / fps, std::abs(vel - vb.hi) / fps});
      }
    }
    if (t + 3 < n) {
      const Eigen::VectorXd jq = -v.q[t] + 3.0 * v.q[t + 1] - 3.0 * v.q[t + 2] + v.q[t + 3];
      const Vec3 jr = -v.root_pos[t] + 3.0 * v.root_pos[t + 1] - 3.0 * v.root_pos[t + 2] +
                      v.root_pos[t + 3];
      d = std::min({d, jq.cwiseAbs().minCoeff() / 8.0, jr.cwiseAbs().minCoeff() / 8.0});
    }
    if (t + 1 < n) {
      for (int r = 0; r < kNumFootRegions; ++r) {
        const Vec3 step = fk[t + 1].sites[r] - fk[t].sites[r];
        d = std::min(d, std::hypot(step.x(), step.y()));
      }
    }
  }
  return d;
}

// Central differences of f over every decision variable, in
// VariableGradient::Flatten order. Rotations are perturbed through
// world-frame increments.
inline Eigen::VectorXd NumericGradient(
    const std::function<double(const DecisionVariables&)>& f,
    const DecisionVariables& vars, double h) {
  const int n = vars.num_frames();
  const int nq = n > 0 ? static_cast<int>(vars.q[0].size()) : 0;
  const int stride = nq + 6;
  Eigen::VectorXd g(n * stride);
  for (int t = 0; t < n; ++t) {
    for (int k = 0; k < stride; ++k) {
      DecisionVariables plus = vars;
      DecisionVariables minus = vars;
      if (k < nq) {
        plus.q[t][k] += h;
        minus.q[t][k] -= h;
      } else if (k < nq + 3) {
        plus.root_pos[t][k - nq] += h;
        minus.root_pos[t][k - nq] -= h;
      } else {
        const Vec3 e = Vec3::Unit(k - nq - 3);
        plus.root_rot[t] = ApplyRotationIncrement(vars.root_rot[t], h * e);
        minus.root_rot[t] = ApplyRotationIncrement(vars.root_rot[t], -h * e);
      }
      g[t * stride + k] = (f(plus) - f(minus)) / (2.0 * h);
    }
  }
  return g;
}

inline double RelativeError(const Eigen::VectorXd& analytic, const Eigen::VectorXd& numeric) {
  return (analytic - numeric).norm() / std::max(numeric.norm(), 1e-6);
}

// Config with a single active term at weight 1.
inline OptimizerConfig SingleTermConfig(LossTerm term) {
  OptimizerConfig cfg;
  cfg.mode = RetargetMode::kPhySINK;
  cfg.weights = LossWeights{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  switch (term) {
    case LossTerm::kGlobalMatch: cfg.weights.global_match = 1.0; break;
    case LossTerm::kLocalMatch: cfg.weights.local_match = 1.0; break;
    case LossTerm::kSmooth: cfg.weights.smooth = 1.0; break;
    case LossTerm::kFeasibility: cfg.weights.feasibility = 1.0; break;
    case LossTerm::kGround: cfg.weights.ground = 1.0; break;
    case LossTerm::kSkate: cfg.weights.skate = 1.0; break;
  }
  return cfg;
}

// Relative gradient error of TotalLoss under `cfg` at the instance.
inline double GradientError(const RandomInstance& inst, const OptimizerConfig& cfg,
                            double h = 1e-6) {
  const Objective obj = TotalLoss(inst.vars, inst.problem, cfg, true);
  const Eigen::VectorXd numeric = NumericGradient(
      [&](const DecisionVariables& v) {
        return TotalLoss(v, inst.problem, cfg, false).loss.total;
      },
      inst.vars, h);
  return RelativeError(obj.gradient.Flatten(), numeric);
}

}  // namespace groundwork::testing

#endif  // GROUNDWORK_TESTS_TEST_SUPPORT_H_
