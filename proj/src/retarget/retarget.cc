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

#include "groundwork/retarget/retarget.h"

#include <cmath>
#include <limits>
#include <random>

#include "groundwork/core/io.h"
#include "groundwork/kinematics/shape_adaptation.h"
#include "groundwork/retarget/limits.h"

namespace groundwork {

namespace {

constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.999;
constexpr double kEpsilon = 1e-8;
// Largest band overshoot (rad) snapped back onto the band edge.
constexpr double kBoundarySnap = 1e-4;

int SourceJoint(const SourceMotion& motion, const std::string& name) {
  const int index = motion.JointIndex(name);
  if (index < 0) {
    throw std::invalid_argument("source joint \"" + name + "\" not present");
  }
  return index;
}

}  // namespace

DivergenceError::DivergenceError(int iteration, std::string term)
    : std::runtime_error("non-finite loss at iteration " + std::to_string(iteration) +
                         " (term " + term + ")"),
      iteration_(iteration),
      term_(std::move(term)) {}

RetargetProblem PrepareProblem(const SourceMotion& source, const RobotModel& model,
                               const JointCorrespondence& corr, RetargetMode mode,
                               const TargetOptions& options) {
  source.Validate();
  RetargetProblem problem;
  problem.model = &model;
  problem.corr = corr;
  SourceMotion scaled = mode == RetargetMode::kIK
                            ? RigidScaleSource(source, corr, model)
                            : AdaptSourceShape(source, corr, model);
  const GroundPlane plane = EstimateGroundPlane(scaled, options.ground_tolerance);
  problem.target = AlignToGround(scaled, plane);
  problem.contacts = ContactScores(problem.target, options.contact_ramp_top);
  return problem;
}

double WeightedTotal(const std::array<double, kNumLossTerms>& raw,
                     const OptimizerConfig& cfg) {
  double total = 0.0;
  for (int k = 0; k < kNumLossTerms; ++k) {
    const auto term = static_cast<LossTerm>(k);
    const double w = TermActive(cfg.mode, term) ? cfg.weights[term] : 0.0;
    if (w != 0.0) total += w * raw[k];
  }
  return total;
}

Objective TotalLoss(const DecisionVariables& vars, const RetargetProblem& problem,
                    const OptimizerConfig& cfg, bool with_gradient) {
  const RobotModel& model = *problem.model;
  const int frames = vars.num_frames();
  const double fps = problem.target.fps;
  const FkResult fk = ForwardKinematics(model, vars);

  Objective out;
  PoseGradient pose_grad;
  PoseGradient* pg = nullptr;
  VariableGradient* vg = nullptr;
  if (with_gradient) {
    out.gradient = VariableGradient::Zero(frames, model.num_joints());
    pose_grad.Reset(frames, model.num_bodies());
    pg = &pose_grad;
    vg = &out.gradient;
  }
  auto weight = [&](LossTerm term) {
    return TermActive(cfg.mode, term) ? cfg.weights[term] : 0.0;
  };
  auto active_pg = [&](LossTerm term) { return weight(term) != 0.0 ? pg : nullptr; };
  auto active_vg = [&](LossTerm term) { return weight(term) != 0.0 ? vg : nullptr; };

  auto& raw = out.loss.raw;
  using T = LossTerm;
  raw[static_cast<int>(T::kGlobalMatch)] =
      LossGlobalMatch(fk, problem.target, problem.corr, cfg.mode == RetargetMode::kIK,
                      active_pg(T::kGlobalMatch), weight(T::kGlobalMatch));
  raw[static_cast<int>(T::kLocalMatch)] =
      LossLocalMatch(fk, problem.target, problem.corr, active_pg(T::kLocalMatch),
                     weight(T::kLocalMatch))
          .total();
  raw[static_cast<int>(T::kSmooth)] =
      LossSmooth(vars, fps, active_vg(T::kSmooth), weight(T::kSmooth));
  raw[static_cast<int>(T::kFeasibility)] =
      LossFeasibility(vars, model, cfg.limit_margin, fps, active_vg(T::kFeasibility),
                      weight(T::kFeasibility))
          .total();
  raw[static_cast<int>(T::kGround)] =
      LossGround(fk, problem.contacts, active_pg(T::kGround), weight(T::kGround));
  raw[static_cast<int>(T::kSkate)] =
      LossSkate(fk, problem.contacts, fps, active_pg(T::kSkate), weight(T::kSkate));

  out.loss.total = WeightedTotal(raw, cfg);
  if (with_gradient) BackpropagatePoseGradient(model, fk, pose_grad, vg);
  return out;
}

DecisionVariables InitialVariables(const RetargetProblem& problem,
                                   const OptimizerConfig& cfg,
                                   const TargetOptions& options) {
  const RobotModel& model = *problem.model;
  const SourceMotion& target = problem.target;
  const std::vector<int> roots = problem.corr.RootPairs();
  int root_joint = -1;
  for (int p : roots) {
    if (problem.corr.pairs[p].body == 0) root_joint = problem.corr.pairs[p].source;
  }
  if (root_joint < 0) {
    throw std::invalid_argument("correspondence does not map the robot root body");
  }
  const int left = SourceJoint(target, options.left_hip);
  const int right = SourceJoint(target, options.right_hip);

  Eigen::VectorXd q0(model.num_joints());
  for (int j = 0; j < model.num_joints(); ++j) {
    const RobotJoint& joint = model.joints()[j];
    const Band band = PositionBand(joint, cfg.limit_margin);
    q0[j] = band.lo < 0.0 && band.hi > 0.0 ? 0.0 : 0.5 * (joint.q_min + joint.q_max);
  }

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);
  DecisionVariables vars;
  for (int t = 0; t < target.num_frames(); ++t) {
    Eigen::VectorXd q = q0;
    for (int j = 0; j < q.size(); ++j) {
      const RobotJoint& joint = model.joints()[j];
      q[j] = std::clamp(q[j] + cfg.init_noise * jitter(rng), joint.q_min, joint.q_max);
    }
    vars.q.push_back(std::move(q));
    vars.root_pos.push_back(target.joints[t][root_joint]);
    const Vec3 lateral = target.joints[t][left] - target.joints[t][right];
    const double yaw = std::hypot(lateral.x(), lateral.y()) > 1e-9
                           ? std::atan2(-lateral.x(), lateral.y())
                           : 0.0;
    vars.root_rot.emplace_back(Eigen::AngleAxisd(yaw, Vec3::UnitZ()));
  }
  return vars;
}

RetargetResult Optimize(const RetargetProblem& problem, DecisionVariables vars,
                        const OptimizerConfig& cfg) {
  cfg.Validate();
  const RobotModel& model = *problem.model;
  const int frames = vars.num_frames();
  const int nq = model.num_joints();
  const int stride = nq + 6;
  for (const RobotJoint& joint : model.joints()) {
    const Band band = PositionBand(joint, cfg.limit_margin);
    if (!(band.lo <= band.hi)) {
      throw std::invalid_argument("joint " + joint.name + ": infeasible limits");
    }
  }

  Eigen::VectorXd first = Eigen::VectorXd::Zero(frames * stride);
  Eigen::VectorXd second = Eigen::VectorXd::Zero(frames * stride);
  RetargetResult result;
  DecisionVariables best_vars = vars;
  double best = std::numeric_limits<double>::infinity();
  double beta1_power = 1.0;
  double beta2_power = 1.0;

  const double warmup = cfg.warmup_fraction * cfg.iterations;
  OptimizerConfig stage = cfg;
  for (int iter = 0; iter <= cfg.iterations; ++iter) {
    const bool last = iter == cfg.iterations;
    const double ramp = iter < warmup ? iter / warmup : 1.0;
    stage.weights.feasibility = ramp * cfg.weights.feasibility;
    stage.weights.ground = ramp * cfg.weights.ground;
    stage.weights.skate = ramp * cfg.weights.skate;
    Objective obj;
    try {
      obj = TotalLoss(vars, problem, stage, !last);
    } catch (const DegenerateBoneError&) {
      // Robot bones are rigid; after the first step a collapsed one means
      // the root has run off to magnitudes where positions stop resolving.
      if (iter == 0) throw;
      throw DivergenceError(iter, std::string(LossTermName(LossTerm::kLocalMatch)));
    }
    obj.loss.total = WeightedTotal(obj.loss.raw, cfg);
    for (int k = 0; k < kNumLossTerms; ++k) {
      if (!std::isfinite(obj.loss.raw[k])) {
        throw DivergenceError(iter, std::string(LossTermName(static_cast<LossTerm>(k))));
      }
    }
    if (!std::isfinite(obj.loss.total)) throw DivergenceError(iter, "total");
    if (obj.loss.total < best) {
      best = obj.loss.total;
      best_vars = vars;
      result.best_iteration = iter;
    }
    result.trace.push_back({iter, obj.loss, best});
    if (last) break;

    const Eigen::VectorXd grad = obj.gradient.Flatten();
    if (!grad.allFinite()) throw DivergenceError(iter, "gradient");
    beta1_power *= kBeta1;
    beta2_power *= kBeta2;
    first = kBeta1 * first + (1.0 - kBeta1) * grad;
    second = kBeta2 * second + (1.0 - kBeta2) * grad.cwiseAbs2();
    const double rate =
        cfg.step_size *
        std::pow(cfg.final_step_fraction, static_cast<double>(iter) / cfg.iterations);
    const Eigen::VectorXd step =
        (rate / (1.0 - beta1_power)) *
        first.cwiseQuotient(((second / (1.0 - beta2_power)).cwiseSqrt().array() + kEpsilon)
                                .matrix());
    for (int t = 0; t < frames; ++t) {
      const int base = t * stride;
      vars.q[t] -= step.segment(base, nq);
      for (int j = 0; j < nq; ++j) {
        const RobotJoint& joint = model.joints()[j];
        vars.q[t][j] = std::clamp(vars.q[t][j], joint.q_min, joint.q_max);
      }
      vars.root_pos[t] -= step.segment<3>(base + nq);
      vars.root_rot[t] =
          ApplyRotationIncrement(vars.root_rot[t], -step.segment<3>(base + nq + 3));
    }
  }
  if (TermActive(cfg.mode, LossTerm::kFeasibility)) {
    // The hinge minimum lies on the band edge; the final iterates straddle
    // it by a fraction of the step.
    for (Eigen::VectorXd& q : best_vars.q) {
      for (int j = 0; j < nq; ++j) {
        const Band band = PositionBand(model.joints()[j], cfg.limit_margin);
        if (q[j] > band.hi && q[j] - band.hi <= kBoundarySnap) q[j] = band.hi;
        if (q[j] < band.lo && band.lo - q[j] <= kBoundarySnap) q[j] = band.lo;
      }
    }
  }
  result.motion = best_vars.ToMotion(model, problem.target.fps);
  result.problem = problem;
  return result;
}

RetargetResult Retarget(const SourceMotion& source, const RobotModel& model,
                        const JointCorrespondence& corr, const OptimizerConfig& cfg,
                        const TargetOptions& options) {
  cfg.Validate();
  RetargetProblem problem = PrepareProblem(source, model, corr, cfg.mode, options);
  DecisionVariables init = InitialVariables(problem, cfg, options);
  return Optimize(problem, std::move(init), cfg);
}

std::string TraceCsv(const std::vector<TraceRow>& trace) {
  std::string out = "iteration,total,best";
  for (int k = 0; k < kNumLossTerms; ++k) {
    out += ",";
    out += LossTermName(static_cast<LossTerm>(k));
  }
  out += "\n";
  for (const TraceRow& row : trace) {
    out += std::to_string(row.iteration) + "," + FormatNumber(row.loss.total) + "," +
           FormatNumber(row.best);
    for (double v : row.loss.raw) out += "," + FormatNumber(v);
    out += "\n";
  }
  return out;
}

}  // namespace groundwork
