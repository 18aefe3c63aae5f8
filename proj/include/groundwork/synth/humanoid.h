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

#ifndef GROUNDWORK_SYNTH_HUMANOID_H_
#define GROUNDWORK_SYNTH_HUMANOID_H_

#include <string>
#include <vector>

#include "groundwork/core/types.h"
#include "groundwork/kinematics/correspondence.h"

// A small procedurally animated humanoid used by the tests, the acceptance
// suite and the example data generator.
namespace groundwork::synth {

// Multipliers on the default segment lengths.
struct BodyProportions {
  double leg = 1.0;
  double arm = 1.0;
  double torso = 1.0;
};

// 19-DoF biped: 3-DoF hips, knees, 2-DoF ankles, waist yaw, 2-DoF shoulders
// and elbows. x forward, y left, z up.
RobotModel TestHumanoid(const BodyProportions& proportions = {});
// Source joint names of rendered motions, in file order.
std::vector<std::string> SourceJointNames();
std::vector<CorrespondenceEntry> TestCorrespondence();

enum class MotionKind { kStand, kWalk, kSquat, kJump, kTurn };

struct MotionParams {
  MotionKind kind = MotionKind::kStand;
  double fps = 30.0;
  double seconds = 4.0;
  double speed = 0.4;          // walk, m/s
  double heading = 0.0;        // rad
  double cycle = 1.0;          // gait period, s
  double turn = 1.2;           // total yaw change of kTurn, rad
  double squat_depth = 0.16;   // m
  double jump_height = 0.05;   // m of foot clearance
  double arm_swing = 0.3;      // rad
  double phase = 0.0;          // gait phase at t = 0, cycles
  // Defects.
  double foot_slide = 0.0;         // forward slip of stance feet, m/s
  double shoulder_pitch_extra = 0.0;  // added to the left shoulder pitch mid-clip
  double arm_wave_hz = 0.0;        // fast shoulder pitch oscillation
  double arm_wave_amp = 0.0;
};

// Joint-space trajectory on `TestHumanoid(proportions)`. Leg angles come from
// closed-form IK so stance feet stay flat on z = 0. Angles are not clamped to
// the joint limits.
RetargetedMotion GenerateMotion(const MotionParams& params,
                                const BodyProportions& proportions = {});

struct RenderOptions {
  double marker_spread = 0.03;  // lateral marker offset around each foot site
  double joint_dz = 0.0;        // vertical shift of joints relative to markers
};

// Source motion from robot FK: corresponded body origins as joints, three
// markers per foot region around the robot's foot sites.
SourceMotion RenderSource(const RobotModel& robot, const RetargetedMotion& motion,
                          const RenderOptions& options = {});

struct SuiteClip {
  std::string name;
  std::string category;  // clean, joint_limit, float, penetration, slide
  MotionParams params;
  RenderOptions render;
  RetargetedMotion truth;
  SourceMotion source;
};

// Clean walking, squatting, jumping, turning and standing clips plus
// defect-injected variants, rendered on TestHumanoid().
std::vector<SuiteClip> SyntheticSuite();

}  // namespace groundwork::synth

#endif  // GROUNDWORK_SYNTH_HUMANOID_H_
