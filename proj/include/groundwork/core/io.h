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

#ifndef GROUNDWORK_CORE_IO_H_
#define GROUNDWORK_CORE_IO_H_

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "groundwork/core/types.h"

namespace groundwork {

// Malformed or schema-violating input. The message carries the file and the
// offending frame/field.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses JSON text. Bare NaN / Infinity tokens (as written by some producers)
// are read as null so the schema layer can report where they occur.
nlohmann::json ParseJson(const std::string& text, const std::string& origin);
nlohmann::json ReadJsonFile(const std::filesystem::path& path);
// Writes `doc` followed by a newline; throws IoError.
void WriteJsonFile(const nlohmann::json& doc, const std::filesystem::path& path);
void WriteTextFile(const std::string& text, const std::filesystem::path& path);
// Shortest decimal text that reads back to the same double.
std::string FormatNumber(double x);

SourceMotion SourceMotionFromJson(const nlohmann::json& doc);
nlohmann::json SourceMotionToJson(const SourceMotion& motion);
SourceMotion LoadSourceMotion(const std::filesystem::path& path);
void SaveSourceMotion(const SourceMotion& motion,
                      const std::filesystem::path& path);

RetargetedMotion RetargetedMotionFromJson(const nlohmann::json& doc);
nlohmann::json RetargetedMotionToJson(const RetargetedMotion& motion);
RetargetedMotion LoadRetargetedMotion(const std::filesystem::path& path);
void SaveRetargetedMotion(const RetargetedMotion& motion,
                          const std::filesystem::path& path);

// Body references ("parent", "body") may be given as an index or a name.
RobotModel RobotModelFromJson(const nlohmann::json& doc);
nlohmann::json RobotModelToJson(const RobotModel& model);
RobotModel LoadRobotModel(const std::filesystem::path& path);
void SaveRobotModel(const RobotModel& model, const std::filesystem::path& path);

}  // namespace groundwork

#endif  // GROUNDWORK_CORE_IO_H_
