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

// Writes the synthetic clip suite, the test humanoid, its correspondence
// and a config pointing at them into one directory.
//
//   make_synthetic_suite OUT_DIR

#include <filesystem>
#include <iostream>

#include "groundwork/core/io.h"
#include "groundwork/kinematics/correspondence.h"
#include "groundwork/synth/humanoid.h"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  namespace gw = groundwork;
  if (argc != 2) {
    std::cerr << "usage: " << argv[0] << " OUT_DIR\n";
    return 2;
  }
  const fs::path out = argv[1];
  try {
    fs::create_directories(out / "clips");
    fs::create_directories(out / "truth");
    nlohmann::json index = nlohmann::json::array();
    for (const gw::synth::SuiteClip& clip : gw::synth::SyntheticSuite()) {
      gw::SaveSourceMotion(clip.source, out / "clips" / (clip.name + ".json"));
      gw::SaveRetargetedMotion(clip.truth, out / "truth" / (clip.name + ".json"));
      index.push_back({{"name", clip.name}, {"category", clip.category}});
    }
    gw::SaveRobotModel(gw::synth::TestHumanoid(), out / "robot.json");
    gw::WriteJsonFile(gw::CorrespondenceEntriesToJson(gw::synth::TestCorrespondence()),
                      out / "correspondence.json");
    gw::WriteJsonFile({{"robot_model", "robot.json"},
                       {"correspondence", "correspondence.json"}},
                      out / "config.json");
    gw::WriteJsonFile(index, out / "suite.json");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
