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

#include "groundwork/kinematics/correspondence.h"

#include <algorithm>
#include <stdexcept>

#include "groundwork/core/io.h"

namespace groundwork {

bool JointCorrespondence::Adjacent(int body_i, int body_j) const {
  for (const CorrespondenceLink& link : links) {
    const int a = pairs[link.parent].body;
    const int b = pairs[link.child].body;
    if ((a == body_i && b == body_j) || (a == body_j && b == body_i)) return true;
  }
  return false;
}

int JointCorrespondence::PairOfBody(int body) const {
  for (size_t p = 0; p < pairs.size(); ++p) {
    if (pairs[p].body == body) return static_cast<int>(p);
  }
  return -1;
}

std::vector<int> JointCorrespondence::RootPairs() const {
  std::vector<bool> is_child(pairs.size(), false);
  for (const CorrespondenceLink& link : links) is_child[link.child] = true;
  std::vector<int> roots;
  for (size_t p = 0; p < pairs.size(); ++p) {
    if (!is_child[p]) roots.push_back(static_cast<int>(p));
  }
  return roots;
}

std::vector<CorrespondenceEntry> CorrespondenceEntriesFromJson(
    const nlohmann::json& doc) {
  if (!doc.is_array()) throw FormatError("correspondence: expected an array");
  std::vector<CorrespondenceEntry> entries;
  for (size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    const std::string where = "correspondence[" + std::to_string(i) + "]";
    if (!item.is_object() || !item.contains("source") ||
        !item.contains("robot_body") || !item["source"].is_string() ||
        !item["robot_body"].is_string()) {
      throw FormatError(where + ": expected {\"source\": string, \"robot_body\": string}");
    }
    CorrespondenceEntry entry;
    entry.source = item["source"].get<std::string>();
    entry.robot_body = item["robot_body"].get<std::string>();
    if (item.contains("end_effector")) {
      if (!item["end_effector"].is_boolean()) {
        throw FormatError(where + ".end_effector: expected a boolean");
      }
      entry.end_effector = item["end_effector"].get<bool>();
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

nlohmann::json CorrespondenceEntriesToJson(
    const std::vector<CorrespondenceEntry>& entries) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& e : entries) {
    doc.push_back({{"source", e.source},
                   {"robot_body", e.robot_body},
                   {"end_effector", e.end_effector}});
  }
  return doc;
}

std::vector<CorrespondenceEntry> LoadCorrespondenceEntries(
    const std::filesystem::path& path) {
  const auto doc = ReadJsonFile(path);
  try {
    return CorrespondenceEntriesFromJson(doc);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

JointCorrespondence BuildCorrespondence(
    const std::vector<CorrespondenceEntry>& entries, const RobotModel& model,
    const std::vector<std::string>& source_joint_names) {
  JointCorrespondence corr;
  for (const CorrespondenceEntry& e : entries) {
    auto it = std::find(source_joint_names.begin(), source_joint_names.end(),
                        e.source);
    if (it == source_joint_names.end()) {
      throw std::invalid_argument("correspondence: source joint \"" + e.source +
                                  "\" not in motion");
    }
    const int body = model.BodyIndex(e.robot_body);
    if (body < 0) {
      throw std::invalid_argument("correspondence: robot body \"" + e.robot_body +
                                  "\" not in model");
    }
    if (corr.PairOfBody(body) >= 0) {
      throw std::invalid_argument("correspondence: robot body \"" + e.robot_body +
                                  "\" used twice");
    }
    corr.pairs.push_back(
        {static_cast<int>(it - source_joint_names.begin()), body, e.end_effector});
  }
  // Links in order of the child body, which is topological.
  std::vector<int> order(corr.pairs.size());
  for (size_t p = 0; p < order.size(); ++p) order[p] = static_cast<int>(p);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return corr.pairs[a].body < corr.pairs[b].body;
  });
  for (int p : order) {
    for (int b = model.bodies()[corr.pairs[p].body].parent; b >= 0;
         b = model.bodies()[b].parent) {
      const int ancestor = corr.PairOfBody(b);
      if (ancestor >= 0) {
        corr.links.push_back({ancestor, p});
        break;
      }
    }
  }
  return corr;
}

}  // namespace groundwork
