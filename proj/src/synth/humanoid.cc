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

#include "groundwork/synth/humanoid.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "groundwork/kinematics/forward_kinematics.h"

namespace groundwork::synth {
namespace {

constexpr double kPi = std::numbers::pi;

constexpr double kHipY = 0.1;
constexpr double kHipDrop = 0.05;
constexpr double kSegment = 0.4;
constexpr double kAnkleHeight = 0.05;
constexpr double kToeX = 0.12;
constexpr double kHeelX = -0.05;
// Pelvis sits this far ahead of the ankles, over the midfoot.
constexpr double kMidfoot = 0.04;
constexpr double kStanceFraction = 0.6;

struct Side {
  const char* prefix;
  double sign;
};
constexpr Side kSides[2] = {{"left_", 1.0}, {"right_", -1.0}};

double Smoother(double s) {
  s = std::clamp(s, 0.0, 1.0);
  return s * s * s * (s * (6.0 * s - 15.0) + 10.0);
}

// Compact C2 bump on |x| < 1.
double Bump(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  const double u = 1.0 - x * x;
  return u * u * u;
}

Mat3 Rz(double yaw) {
  return Eigen::AngleAxisd(yaw, Vec3::UnitZ()).toRotationMatrix();
}

struct PelvisPose {
  Vec3 pos = Vec3::Zero();
  double yaw = 0.0;
};

struct FootPose {
  Vec3 ankle = Vec3::Zero();
  double yaw = 0.0;
};

struct LegAngles {
  double hip_yaw = 0.0;
  double hip_roll = 0.0;
  double hip_pitch = 0.0;
  double knee = 0.0;
  double ankle_pitch = 0.0;
  double ankle_roll = 0.0;
};

// Closed-form leg IK keeping the foot flat at `foot.yaw`.
LegAngles SolveLeg(const PelvisPose& pelvis, const FootPose& foot, double sign,
                   double thigh, double shin) {
  const Vec3 hip =
      pelvis.pos + Rz(pelvis.yaw) * Vec3(0.0, sign * kHipY, -kHipDrop);
  const Vec3 d = Rz(-foot.yaw) * (foot.ankle - hip);
  LegAngles a;
  a.hip_yaw = std::remainder(foot.yaw - pelvis.yaw, 2.0 * kPi);
  a.hip_roll = std::atan2(d.y(), -d.z());
  const double xp = d.x();
  const double zp = -std::hypot(d.y(), d.z());
  const double reach = std::hypot(xp, zp);
  if (reach >= 0.999 * (thigh + shin)) {
    throw std::logic_error("synthetic leg target out of reach");
  }
  const double cos_knee = (reach * reach - thigh * thigh - shin * shin) /
                          (2.0 * thigh * shin);
  a.knee = std::acos(std::clamp(cos_knee, -1.0, 1.0));
  const double beta = std::atan2(-xp, -zp);
  const double gamma =
      std::atan2(shin * std::sin(a.knee), thigh + shin * std::cos(a.knee));
  a.hip_pitch = beta - gamma;
  a.ankle_pitch = -(a.hip_pitch + a.knee);
  a.ankle_roll = -a.hip_roll;
  return a;
}

class Generator {
 public:
  Generator(const MotionParams& p, const BodyProportions& prop)
      : p_(p),
        thigh_(kSegment * prop.leg),
        shin_(kSegment * prop.leg),
        stand_z_(kAnkleHeight + kHipDrop + 0.96 * (thigh_ + shin_)),
        walk_z_(kAnkleHeight + kHipDrop + 0.93 * (thigh_ + shin_)) {}

  PelvisPose Pelvis(double t) const {
    PelvisPose pose;
    const Vec3 fwd(std::cos(p_.heading), std::sin(p_.heading), 0.0);
    const Vec3 left(-fwd.y(), fwd.x(), 0.0);
    const double u = t / p_.cycle + p_.phase;
    const double scale = p_.seconds / 4.0;
    switch (p_.kind) {
      case MotionKind::kStand:
        pose.pos = 0.02 * std::sin(2.0 * kPi * 0.25 * t) * fwd +
                   0.015 * std::sin(2.0 * kPi * 0.3 * t) * left;
        pose.pos.z() = stand_z_ - 0.01 + 0.01 * std::cos(2.0 * kPi * 0.2 * t);
        pose.yaw = p_.heading;
        break;
      case MotionKind::kWalk:
        pose.pos = p_.speed * t * fwd +
                   0.02 * std::sin(2.0 * kPi * (u - 0.05)) * left;
        pose.pos.z() = walk_z_ + 0.01 * std::cos(4.0 * kPi * u);
        pose.yaw = p_.heading;
        break;
      case MotionKind::kTurn:
        pose.pos = 0.015 * std::sin(2.0 * kPi * (u - 0.05)) * left;
        pose.pos.z() = walk_z_ + 0.01 * std::cos(4.0 * kPi * u);
        pose.yaw = p_.heading + p_.turn * Smoother(t / p_.seconds);
        break;
      case MotionKind::kSquat:
        pose.pos.z() =
            stand_z_ - p_.squat_depth * 0.5 *
                           (1.0 - std::cos(2.0 * kPi * t / (2.0 * scale)));
        pose.yaw = p_.heading;
        break;
      case MotionKind::kJump:
        pose.pos.z() = stand_z_ + JumpLift(t) -
                       0.08 * Bump((t - 1.0 * scale) / (0.6 * scale)) -
                       0.08 * Bump((t - 3.0 * scale) / (0.6 * scale));
        pose.yaw = p_.heading;
        break;
    }
    return pose;
  }

  FootPose Foot(double t, int side) const {
    const double sign = kSides[side].sign;
    if (p_.kind == MotionKind::kWalk || p_.kind == MotionKind::kTurn) {
      return SteppingFoot(t, side);
    }
    const PelvisPose rest = PelvisAt0();
    FootPose foot;
    foot.yaw = rest.yaw;
    foot.ankle = Vec3(rest.pos.x(), rest.pos.y(), 0.0) +
                 Rz(rest.yaw) * Vec3(-kMidfoot, sign * kHipY, 0.0);
    foot.ankle.z() = kAnkleHeight;
    if (p_.kind == MotionKind::kJump) foot.ankle.z() += JumpLift(t);
    return foot;
  }

  Eigen::VectorXd Pose(const RobotModel& robot, double t) const {
    Eigen::VectorXd q = Eigen::VectorXd::Zero(robot.num_joints());
    auto set = [&](const std::string& name, double value) {
      const auto it = index_.find(name);
      if (it == index_.end()) throw std::logic_error("missing joint " + name);
      q[it->second] = value;
    };
    const PelvisPose pelvis = Pelvis(t);
    for (int side = 0; side < 2; ++side) {
      const std::string pre = kSides[side].prefix;
      const LegAngles a =
          SolveLeg(pelvis, Foot(t, side), kSides[side].sign, thigh_, shin_);
      set(pre + "hip_yaw", a.hip_yaw);
      set(pre + "hip_roll", a.hip_roll);
      set(pre + "hip_pitch", a.hip_pitch);
      set(pre + "knee", a.knee);
      set(pre + "ankle_pitch", a.ankle_pitch);
      set(pre + "ankle_roll", a.ankle_roll);
    }
    const bool gait =
        p_.kind == MotionKind::kWalk || p_.kind == MotionKind::kTurn;
    const double swing_phase = gait ? 2.0 * kPi * (t / p_.cycle + p_.phase)
                                    : 2.0 * kPi * 0.25 * t;
    double pitch = p_.arm_swing * std::sin(swing_phase);
    if (!gait) pitch = 0.3 * p_.arm_swing * std::sin(swing_phase) - 0.1;
    const double wave =
        p_.arm_wave_amp * std::sin(2.0 * kPi * p_.arm_wave_hz * t);
    const double s = t / p_.seconds;
    const double plateau = Smoother((s - 0.2) / 0.15) * Smoother((0.8 - s) / 0.15);
    set("left_shoulder_pitch", pitch + wave + p_.shoulder_pitch_extra * plateau);
    set("right_shoulder_pitch", -pitch - wave);
    set("left_shoulder_roll", 0.15);
    set("right_shoulder_roll", -0.15);
    set("left_elbow", -0.5 - 0.2 * std::sin(swing_phase));
    set("right_elbow", -0.5 + 0.2 * std::sin(swing_phase));
    set("waist_yaw", gait ? -0.1 * std::sin(swing_phase)
                          : 0.08 * std::sin(2.0 * kPi * 0.2 * t));
    return q;
  }

  void Index(const RobotModel& robot) {
    for (int j = 0; j < robot.num_joints(); ++j) {
      index_[robot.joints()[j].name] = j;
    }
  }

 private:
  PelvisPose PelvisAt0() const {
    PelvisPose pose = Pelvis(0.0);
    if (p_.kind == MotionKind::kStand) pose.pos.setZero();
    return pose;
  }

  double JumpLift(double t) const {
    const double scale = p_.seconds / 4.0;
    return p_.jump_height * Bump((t - 2.0 * scale) / (0.45 * scale));
  }

  FootPose Nominal(double cycles_index, int side) const {
    const double phase0 = side == 0 ? 0.0 : 0.5;
    const double tk =
        (cycles_index + 0.5 * kStanceFraction - phase0 - p_.phase) * p_.cycle;
    const PelvisPose pelvis = Pelvis(tk);
    FootPose foot;
    foot.yaw = pelvis.yaw;
    foot.ankle = Vec3(pelvis.pos.x(), pelvis.pos.y(), 0.0) +
                 Rz(pelvis.yaw) *
                     Vec3(-kMidfoot, kSides[side].sign * kHipY, 0.0);
    foot.ankle.z() = kAnkleHeight;
    return foot;
  }

  // Stance-foot position at stance fraction f in [0, kStanceFraction].
  FootPose Planted(double k, int side, double f) const {
    FootPose foot = Nominal(k, side);
    const double slip = p_.foot_slide * (f - 0.5 * kStanceFraction) * p_.cycle;
    foot.ankle += slip * Vec3(std::cos(foot.yaw), std::sin(foot.yaw), 0.0);
    return foot;
  }

  FootPose SteppingFoot(double t, int side) const {
    const double phase0 = side == 0 ? 0.0 : 0.5;
    const double u = t / p_.cycle + phase0 + p_.phase;
    const double k = std::floor(u);
    const double f = u - k;
    if (f < kStanceFraction) return Planted(k, side, f);
    const double s = (f - kStanceFraction) / (1.0 - kStanceFraction);
    const FootPose from = Planted(k, side, kStanceFraction);
    const FootPose to = Planted(k + 1.0, side, 0.0);
    const double w = Smoother(s);
    FootPose foot;
    foot.ankle = (1.0 - w) * from.ankle + w * to.ankle;
    foot.yaw = from.yaw + w * std::remainder(to.yaw - from.yaw, 2.0 * kPi);
    const double lift = p_.kind == MotionKind::kWalk ? 0.06 : 0.04;
    foot.ankle.z() = kAnkleHeight + lift * Bump(2.0 * s - 1.0);
    return foot;
  }

  MotionParams p_;
  double thigh_;
  double shin_;
  double stand_z_;
  double walk_z_;
  std::unordered_map<std::string, int> index_;
};

struct Pairing {
  const char* source;
  const char* body;
  bool end_effector;
};

constexpr Pairing kPairings[] = {
    {"pelvis", "pelvis", false},
    {"left_hip", "left_hip_yaw_link", false},
    {"left_knee", "left_knee_link", false},
    {"left_ankle", "left_ankle_pitch_link", false},
    {"left_foot", "left_toe_link", true},
    {"right_hip", "right_hip_yaw_link", false},
    {"right_knee", "right_knee_link", false},
    {"right_ankle", "right_ankle_pitch_link", false},
    {"right_foot", "right_toe_link", true},
    {"spine1", "torso_link", false},
    {"spine3", "chest_link", false},
    {"head", "head_link", true},
    {"left_shoulder", "left_shoulder_pitch_link", false},
    {"left_elbow", "left_elbow_link", false},
    {"left_wrist", "left_hand_link", true},
    {"right_shoulder", "right_shoulder_pitch_link", false},
    {"right_elbow", "right_elbow_link", false},
    {"right_wrist", "right_hand_link", true},
};

}  // namespace

RobotModel TestHumanoid(const BodyProportions& prop) {
  std::vector<RobotBody> bodies;
  std::vector<RobotJoint> joints;
  auto body = [&](std::string name, int parent, const Vec3& offset) {
    bodies.push_back({std::move(name), parent, offset});
    return static_cast<int>(bodies.size()) - 1;
  };
  auto joint = [&](std::string name, int b, const Vec3& axis, double lo,
                   double hi, double v_max) {
    joints.push_back({std::move(name), b, axis, lo, hi, v_max});
  };
  const int pelvis = body("pelvis", -1, Vec3::Zero());
  std::array<int, 2> ankle_roll{};
  for (int side = 0; side < 2; ++side) {
    const std::string pre = kSides[side].prefix;
    const double s = kSides[side].sign;
    const double leg = kSegment * prop.leg;
    int b = body(pre + "hip_yaw_link", pelvis, Vec3(0.0, s * kHipY, -kHipDrop));
    joint(pre + "hip_yaw", b, Vec3::UnitZ(), -0.8, 0.8, 15.0);
    b = body(pre + "hip_roll_link", b, Vec3::Zero());
    joint(pre + "hip_roll", b, Vec3::UnitX(), s > 0 ? -0.4 : -0.8,
          s > 0 ? 0.8 : 0.4, 15.0);
    b = body(pre + "hip_pitch_link", b, Vec3::Zero());
    joint(pre + "hip_pitch", b, Vec3::UnitY(), -2.2, 0.8, 15.0);
    b = body(pre + "knee_link", b, Vec3(0.0, 0.0, -leg));
    joint(pre + "knee", b, Vec3::UnitY(), -0.05, 2.6, 15.0);
    b = body(pre + "ankle_pitch_link", b, Vec3(0.0, 0.0, -leg));
    joint(pre + "ankle_pitch", b, Vec3::UnitY(), -1.2, 0.8, 15.0);
    b = body(pre + "ankle_roll_link", b, Vec3::Zero());
    joint(pre + "ankle_roll", b, Vec3::UnitX(), -0.5, 0.5, 15.0);
    ankle_roll[side] = b;
    body(pre + "toe_link", b, Vec3(kToeX, 0.0, -kAnkleHeight));
  }
  const int torso = body("torso_link", pelvis, Vec3(0.0, 0.0, 0.1 * prop.torso));
  joint("waist_yaw", torso, Vec3::UnitZ(), -1.0, 1.0, 6.0);
  const int chest = body("chest_link", torso, Vec3(0.0, 0.0, 0.25 * prop.torso));
  body("head_link", chest, Vec3(0.0, 0.0, 0.2 * prop.torso));
  for (int side = 0; side < 2; ++side) {
    const std::string pre = kSides[side].prefix;
    const double s = kSides[side].sign;
    int b = body(pre + "shoulder_pitch_link", chest, Vec3(0.0, s * 0.18, 0.05));
    joint(pre + "shoulder_pitch", b, Vec3::UnitY(), -2.5, 1.5, 5.0);
    b = body(pre + "shoulder_roll_link", b, Vec3::Zero());
    joint(pre + "shoulder_roll", b, Vec3::UnitX(), s > 0 ? -0.3 : -2.0,
          s > 0 ? 2.0 : 0.3, 5.0);
    b = body(pre + "elbow_link", b, Vec3(0.0, 0.0, -0.25 * prop.arm));
    joint(pre + "elbow", b, Vec3::UnitY(), -2.4, 0.05, 5.0);
    body(pre + "hand_link", b, Vec3(0.0, 0.0, -0.22 * prop.arm));
  }
  std::array<FootSite, kNumFootRegions> sites{};
  for (int side = 0; side < 2; ++side) {
    sites[2 * side] = {ankle_roll[side], Vec3(kHeelX, 0.0, -kAnkleHeight)};
    sites[2 * side + 1] = {ankle_roll[side], Vec3(kToeX, 0.0, -kAnkleHeight)};
  }
  return RobotModel(std::move(bodies), std::move(joints), sites,
                    {"pelvis", "torso_link"});
}

std::vector<std::string> SourceJointNames() {
  std::vector<std::string> names;
  for (const Pairing& p : kPairings) names.emplace_back(p.source);
  return names;
}

std::vector<CorrespondenceEntry> TestCorrespondence() {
  std::vector<CorrespondenceEntry> entries;
  for (const Pairing& p : kPairings) {
    entries.push_back({p.source, p.body, p.end_effector});
  }
  return entries;
}

RetargetedMotion GenerateMotion(const MotionParams& params,
                                const BodyProportions& proportions) {
  if (!(params.fps > 0.0) || !(params.seconds > 0.0) || !(params.cycle > 0.0)) {
    throw std::invalid_argument("motion params: fps, seconds, cycle must be > 0");
  }
  const RobotModel robot = TestHumanoid(proportions);
  Generator gen(params, proportions);
  gen.Index(robot);
  const int frames = static_cast<int>(std::lround(params.seconds * params.fps));
  RetargetedMotion motion;
  motion.fps = params.fps;
  motion.joint_names = robot.JointNames();
  for (int t = 0; t < frames; ++t) {
    const double time = t / params.fps;
    const PelvisPose pelvis = gen.Pelvis(time);
    motion.q.push_back(gen.Pose(robot, time));
    motion.root_pos.push_back(pelvis.pos);
    motion.root_rot.emplace_back(Eigen::AngleAxisd(pelvis.yaw, Vec3::UnitZ()));
  }
  return motion;
}

SourceMotion RenderSource(const RobotModel& robot, const RetargetedMotion& motion,
                          const RenderOptions& options) {
  std::vector<int> bodies;
  for (const Pairing& p : kPairings) {
    const int b = robot.BodyIndex(p.body);
    if (b < 0) throw std::invalid_argument(std::string("missing body ") + p.body);
    bodies.push_back(b);
  }
  SourceMotion src;
  src.fps = motion.fps;
  src.joint_names = SourceJointNames();
  const FkResult fk = ForwardKinematics(robot, motion);
  const Vec3 dz(0.0, 0.0, options.joint_dz);
  for (int r = 0; r < kNumFootRegions; ++r) {
    src.markers[r].resize(fk.size());
  }
  for (std::size_t t = 0; t < fk.size(); ++t) {
    std::vector<Vec3> frame;
    for (int b : bodies) frame.push_back(fk[t].pos[b] + dz);
    src.joints.push_back(std::move(frame));
    for (int r = 0; r < kNumFootRegions; ++r) {
      const Vec3& site = fk[t].sites[r];
      const Vec3 lateral =
          fk[t].rot[robot.foot_sites()[r].body] *
          Vec3(0.0, options.marker_spread, 0.0);
      src.markers[r][t] = {site - lateral, site, site + lateral};
    }
  }
  return src;
}

std::vector<SuiteClip> SyntheticSuite() {
  auto walk = [](double speed, double heading, double phase) {
    MotionParams p;
    p.kind = MotionKind::kWalk;
    p.speed = speed;
    p.heading = heading;
    p.phase = phase;
    return p;
  };
  auto of = [](MotionKind kind) {
    MotionParams p;
    p.kind = kind;
    return p;
  };
  std::vector<SuiteClip> clips;
  auto add = [&](std::string name, std::string category, MotionParams p,
                 RenderOptions render = {}) {
    SuiteClip clip;
    clip.name = std::move(name);
    clip.category = std::move(category);
    clip.params = p;
    clip.render = render;
    clips.push_back(std::move(clip));
  };

  add("walk_a", "clean", walk(0.4, 0.0, 0.0));
  MotionParams p = walk(0.5, 0.6, 0.25);
  p.cycle = 1.1;
  add("walk_b", "clean", p);
  add("walk_c", "clean", walk(0.3, -1.0, 0.6));
  p = of(MotionKind::kSquat);
  add("squat_a", "clean", p);
  p.squat_depth = 0.12;
  p.heading = 0.8;
  add("squat_b", "clean", p);
  p = of(MotionKind::kJump);
  add("jump_a", "clean", p);
  p.jump_height = 0.04;
  p.heading = -0.4;
  add("jump_b", "clean", p);
  p = of(MotionKind::kTurn);
  add("turn_a", "clean", p);
  p.turn = -1.5;
  p.phase = 0.3;
  add("turn_b", "clean", p);
  add("stand_a", "clean", of(MotionKind::kStand));

  p = walk(0.4, 0.0, 0.0);
  p.shoulder_pitch_extra = 1.2;
  add("limit_walk", "joint_limit", p);
  p = of(MotionKind::kSquat);
  p.shoulder_pitch_extra = 1.5;
  add("limit_squat", "joint_limit", p);
  p = of(MotionKind::kStand);
  p.arm_wave_hz = 3.0;
  p.arm_wave_amp = 0.4;
  add("velocity_stand", "joint_limit", p);
  p = walk(0.3, 0.4, 0.1);
  p.arm_wave_hz = 2.5;
  p.arm_wave_amp = 0.45;
  add("velocity_walk", "joint_limit", p);

  add("float_walk", "float", walk(0.4, 0.3, 0.0), {0.03, 0.03});
  add("float_squat", "float", of(MotionKind::kSquat), {0.03, 0.03});
  add("penetration_walk", "penetration", walk(0.35, -0.5, 0.4), {0.03, -0.03});
  add("penetration_turn", "penetration", of(MotionKind::kTurn), {0.03, -0.03});

  p = walk(0.4, 0.0, 0.0);
  p.foot_slide = 0.25;
  add("slide_walk_a", "slide", p);
  p = walk(0.3, 0.5, 0.3);
  p.foot_slide = 0.3;
  add("slide_walk_b", "slide", p);
  p = of(MotionKind::kTurn);
  p.foot_slide = 0.2;
  add("slide_turn", "slide", p);

  const RobotModel robot = TestHumanoid();
  for (SuiteClip& clip : clips) {
    clip.truth = GenerateMotion(clip.params);
    clip.source = RenderSource(robot, clip.truth, clip.render);
  }
  return clips;
}

}  // namespace groundwork::synth
