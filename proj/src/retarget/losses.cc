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

#include "groundwork/retarget/losses.h"

#include <cmath>
#include <string>

#include "groundwork/retarget/limits.h"

namespace groundwork {

namespace {

double Sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

void CheckFrames(const FkResult& fk, int frames, const char* what) {
  if (static_cast<int>(fk.size()) != frames) {
    throw std::invalid_argument(std::string(what) + ": robot has " +
                                std::to_string(fk.size()) + " frames, reference has " +
                                std::to_string(frames));
  }
}

}  // namespace

RetargetedMotion DecisionVariables::ToMotion(const RobotModel& model,
                                             double fps) const {
  RetargetedMotion motion;
  motion.fps = fps;
  motion.joint_names = model.JointNames();
  motion.q = q;
  motion.root_pos = root_pos;
  motion.root_rot = root_rot;
  return motion;
}

DecisionVariables DecisionVariables::FromMotion(const RetargetedMotion& motion) {
  return {motion.q, motion.root_pos, motion.root_rot};
}

VariableGradient VariableGradient::Zero(int frames, int joints) {
  VariableGradient g;
  g.q.assign(frames, Eigen::VectorXd::Zero(joints));
  g.root_pos.assign(frames, Vec3::Zero());
  g.root_rot.assign(frames, Vec3::Zero());
  return g;
}

void VariableGradient::SetZero() {
  for (auto& v : q) v.setZero();
  for (auto& v : root_pos) v.setZero();
  for (auto& v : root_rot) v.setZero();
}

Eigen::VectorXd VariableGradient::Flatten() const {
  const int frames = static_cast<int>(q.size());
  const int nq = frames > 0 ? static_cast<int>(q[0].size()) : 0;
  Eigen::VectorXd flat(frames * (nq + 6));
  for (int t = 0; t < frames; ++t) {
    const int base = t * (nq + 6);
    flat.segment(base, nq) = q[t];
    flat.segment<3>(base + nq) = root_pos[t];
    flat.segment<3>(base + nq + 3) = root_rot[t];
  }
  return flat;
}

void PoseGradient::Reset(int frames, int bodies) {
  body.resize(frames);
  site.resize(frames);
  for (int t = 0; t < frames; ++t) {
    body[t].assign(bodies, Vec3::Zero());
    site[t].fill(Vec3::Zero());
  }
}

void BackpropagatePoseGradient(const RobotModel& model, const FkResult& fk,
                               const PoseGradient& pose_grad,
                               VariableGradient* grad) {
  const int nb = model.num_bodies();
  std::vector<Vec3> force(nb);
  std::vector<Vec3> moment(nb);
  for (size_t t = 0; t < fk.size(); ++t) {
    const BodyPoses& poses = fk[t];
    for (int b = 0; b < nb; ++b) {
      force[b] = pose_grad.body[t][b];
      moment[b] = poses.pos[b].cross(force[b]);
    }
    for (int r = 0; r < kNumFootRegions; ++r) {
      const int b = model.foot_sites()[r].body;
      const Vec3& g = pose_grad.site[t][r];
      force[b] += g;
      moment[b] += poses.sites[r].cross(g);
    }
    // Children come after parents, so a reverse sweep sees complete subtrees.
    for (int b = nb - 1; b > 0; --b) {
      const int j = model.joint_of_body(b);
      if (j >= 0) {
        const Vec3 axis = poses.rot[b] * model.joints()[j].axis;
        grad->q[t][j] += axis.dot(moment[b] - poses.pos[b].cross(force[b]));
      }
      const int parent = model.bodies()[b].parent;
      force[parent] += force[b];
      moment[parent] += moment[b];
    }
    grad->root_pos[t] += force[0];
    grad->root_rot[t] += moment[0] - poses.pos[0].cross(force[0]);
  }
}

FkResult ForwardKinematics(const RobotModel& model, const DecisionVariables& vars) {
  FkResult fk;
  fk.reserve(vars.num_frames());
  for (int t = 0; t < vars.num_frames(); ++t) {
    fk.push_back(ForwardKinematics(model, vars.q[t], vars.root_pos[t], vars.root_rot[t]));
  }
  return fk;
}

double LossGlobalMatch(const FkResult& fk, const SourceMotion& source,
                       const JointCorrespondence& corr, bool end_effectors_only,
                       PoseGradient* grad, double scale) {
  CheckFrames(fk, source.num_frames(), "global match");
  double total = 0.0;
  for (size_t t = 0; t < fk.size(); ++t) {
    for (const CorrespondencePair& pair : corr.pairs) {
      if (end_effectors_only && !pair.end_effector) continue;
      const Vec3 diff = fk[t].pos[pair.body] - source.joints[t][pair.source];
      total += diff.cwiseAbs().sum();
      if (grad) {
        grad->body[t][pair.body] +=
            scale * Vec3(Sign(diff.x()), Sign(diff.y()), Sign(diff.z()));
      }
    }
  }
  return total;
}

LocalMatchValue LossLocalMatch(const FkResult& fk, const SourceMotion& source,
                               const JointCorrespondence& corr,
                               PoseGradient* grad, double scale) {
  CheckFrames(fk, source.num_frames(), "local match");
  LocalMatchValue value;
  for (size_t t = 0; t < fk.size(); ++t) {
    for (const CorrespondenceLink& link : corr.links) {
      const CorrespondencePair& a = corr.pairs[link.parent];
      const CorrespondencePair& b = corr.pairs[link.child];
      const Vec3 src = source.joints[t][a.source] - source.joints[t][b.source];
      const Vec3 rob = fk[t].pos[a.body] - fk[t].pos[b.body];
      const double src_len = src.norm();
      const double rob_len = rob.norm();
      if (!(src_len > 0.0) || !(rob_len > 0.0)) {
        throw DegenerateBoneError(
            "frame " + std::to_string(t) + ": zero-length " +
            (src_len > 0.0 ? "robot" : "source") + " bone " +
            source.joint_names[a.source] + "-" + source.joint_names[b.source]);
      }
      const Vec3 src_dir = src / src_len;
      const Vec3 rob_dir = rob / rob_len;
      const double cosine = src_dir.dot(rob_dir);
      // Ordered pairs (i, j) and (j, i) contribute equally.
      value.position += 2.0 * (src - rob).squaredNorm();
      value.orientation += 2.0 * (1.0 - cosine);
      if (grad) {
        const Vec3 g_pos = -2.0 * (src - rob);
        const Vec3 g_dir = -(src_dir - cosine * rob_dir) / rob_len;
        const Vec3 g = 2.0 * scale * (g_pos + g_dir);
        grad->body[t][a.body] += g;
        grad->body[t][b.body] -= g;
      }
    }
  }
  return value;
}

double LossSmooth(const DecisionVariables& vars, double fps,
                  VariableGradient* grad, double scale) {
  const int n = vars.num_frames();
  if (n < 4) throw std::invalid_argument("smoothness loss needs at least 4 frames");
  double total = 0.0;
  // v_t - 2 v_{t+1} + v_{t+2} = fps * (-x_t + 3 x_{t+1} - 3 x_{t+2} + x_{t+3})
  for (int t = 0; t + 3 < n; ++t) {
    const Eigen::VectorXd dq =
        fps * (-vars.q[t] + 3.0 * vars.q[t + 1] - 3.0 * vars.q[t + 2] + vars.q[t + 3]);
    const Vec3 dr = fps * (-vars.root_pos[t] + 3.0 * vars.root_pos[t + 1] -
                           3.0 * vars.root_pos[t + 2] + vars.root_pos[t + 3]);
    total += dq.cwiseAbs().sum() + dr.cwiseAbs().sum();
    if (grad) {
      const Eigen::VectorXd sq = scale * fps * dq.unaryExpr(&Sign);
      const Vec3 sr = scale * fps * dr.unaryExpr(&Sign);
      grad->q[t] -= sq;
      grad->q[t + 1] += 3.0 * sq;
      grad->q[t + 2] -= 3.0 * sq;
      grad->q[t + 3] += sq;
      grad->root_pos[t] -= sr;
      grad->root_pos[t + 1] += 3.0 * sr;
      grad->root_pos[t + 2] -= 3.0 * sr;
      grad->root_pos[t + 3] += sr;
    }
  }
  return total;
}

FeasibilityValue LossFeasibility(const DecisionVariables& vars,
                                 const RobotModel& model, double margin,
                                 double fps, VariableGradient* grad,
                                 double scale) {
  FeasibilityValue value;
  const int n = vars.num_frames();
  for (int j = 0; j < model.num_joints(); ++j) {
    const RobotJoint& joint = model.joints()[j];
    const Band pos = PositionBand(joint, margin);
    const Band vel = VelocityBand(joint, margin);
    for (int t = 0; t < n; ++t) {
      const double q = vars.q[t][j];
      if (q > pos.hi) {
        value.position += q - pos.hi;
        if (grad) grad->q[t][j] += scale;
      } else if (q < pos.lo) {
        value.position += pos.lo - q;
        if (grad) grad->q[t][j] -= scale;
      }
      if (t + 1 >= n) continue;
      const double v = fps * (vars.q[t + 1][j] - q);
      double dv = 0.0;
      if (v > vel.hi) {
        value.velocity += v - vel.hi;
        dv = 1.0;
      } else if (v < vel.lo) {
        value.velocity += vel.lo - v;
        dv = -1.0;
      }
      if (grad && dv != 0.0) {
        grad->q[t + 1][j] += scale * fps * dv;
        grad->q[t][j] -= scale * fps * dv;
      }
    }
  }
  return value;
}

double LossGround(const FkResult& fk, const ContactSchedule& contacts,
                  PoseGradient* grad, double scale) {
  CheckFrames(fk, contacts.num_frames(), "ground loss");
  double total = 0.0;
  for (size_t t = 0; t < fk.size(); ++t) {
    for (int r = 0; r < kNumFootRegions; ++r) {
      const double c = contacts.c[r][t];
      if (c == 0.0) continue;
      const double z = fk[t].sites[r].z();
      total += c * z * z;
      if (grad) grad->site[t][r].z() += scale * 2.0 * c * z;
    }
  }
  return total;
}

double LossSkate(const FkResult& fk, const ContactSchedule& contacts, double fps,
                 PoseGradient* grad, double scale) {
  CheckFrames(fk, contacts.num_frames(), "skating loss");
  if (fk.size() < 2) throw std::invalid_argument("skating loss needs at least 2 frames");
  double total = 0.0;
  for (size_t t = 0; t + 1 < fk.size(); ++t) {
    for (int r = 0; r < kNumFootRegions; ++r) {
      const double c = contacts.c[r][t];
      if (c == 0.0) continue;
      const Vec3 step = fk[t + 1].sites[r] - fk[t].sites[r];
      const Vec2 horizontal(step.x(), step.y());
      const double speed = fps * horizontal.norm();
      total += c * speed;
      if (grad && speed > 0.0) {
        const Vec2 dir = horizontal.normalized();
        const Vec3 g = scale * c * fps * Vec3(dir.x(), dir.y(), 0.0);
        grad->site[t + 1][r] += g;
        grad->site[t][r] -= g;
      }
    }
  }
  return total;
}

}  // namespace groundwork
