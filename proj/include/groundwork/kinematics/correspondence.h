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

#ifndef GROUNDWORK_KINEMATICS_CORRESPONDENCE_H_
#define GROUNDWORK_KINEMATICS_CORRESPONDENCE_H_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "groundwork/core/types.h"

namespace groundwork {

// As written in a correspondence file.
struct CorrespondenceEntry {
  std::string source;
  std::string robot_body;
  bool end_effector = false;
};

struct CorrespondencePair {
  int source = 0;  // index into SourceMotion::joint_names
  int body = 0;    // robot body index
  bool end_effector = false;
};

// A link between two corresponded robot bodies: `parent` is the nearest
// corresponded ancestor of `child` in the robot tree. Indices refer to
// JointCorrespondence::pairs.
struct CorrespondenceLink {
  int parent = 0;
  int child = 0;
};

struct JointCorrespondence {
  std::vector<CorrespondencePair> pairs;
  std::vector<CorrespondenceLink> links;

  // m_ij over robot bodies: 1 when i and j are linked (symmetric, zero
  // diagonal).
  bool Adjacent(int body_i, int body_j) const;
  // Pair holding `body`, or -1.
  int PairOfBody(int body) const;
  // Pairs with no corresponded ancestor (usually just the pelvis).
  std::vector<int> RootPairs() const;
};

std::vector<CorrespondenceEntry> CorrespondenceEntriesFromJson(
    const nlohmann::json& doc);
nlohmann::json CorrespondenceEntriesToJson(
    const std::vector<CorrespondenceEntry>& entries);
std::vector<CorrespondenceEntry> LoadCorrespondenceEntries(
    const std::filesystem::path& path);

// Resolves names and derives links from the robot tree. Throws
// std::invalid_argument on unknown names or a body used twice.
JointCorrespondence BuildCorrespondence(
    const std::vector<CorrespondenceEntry>& entries, const RobotModel& model,
    const std::vector<std::string>& source_joint_names);

}  // namespace groundwork

#endif  // GROUNDWORK_KINEMATICS_CORRESPONDENCE_H_
