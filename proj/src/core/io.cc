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

#include "groundwork/core/io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace groundwork {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void SchemaError(const std::string& where,
                              const std::string& what) {
  throw FormatError(where + ": " + what);
}

const json& Field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) SchemaError(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) SchemaError(where, std::string("missing field \"") + key + "\"");
  return *it;
}

// null stands in for NaN/Infinity after ParseJson.
double Number(const json& value, const std::string& where) {
  if (value.is_null()) SchemaError(where, "non-finite value");
  if (!value.is_number()) SchemaError(where, "expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) SchemaError(where, "non-finite value");
  return x;
}

Vec3 Point(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 3) {
    SchemaError(where, "expected [x, y, z]");
  }
  return {Number(value[0], where), Number(value[1], where),
          Number(value[2], where)};
}

json PointJson(const Vec3& p) { return json::array({p.x(), p.y(), p.z()}); }

std::vector<std::string> Names(const json& value, const std::string& where) {
  if (!value.is_array()) SchemaError(where, "expected an array of strings");
  std::vector<std::string> names;
  for (size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_string()) {
      SchemaError(where + "[" + std::to_string(i) + "]", "expected a string");
    }
    names.push_back(value[i].get<std::string>());
  }
  return names;
}

std::string FrameWhere(size_t t) { return "frame " + std::to_string(t); }

int BodyRef(const json& value, const std::vector<RobotBody>& bodies,
            const std::string& where) {
  if (value.is_number_integer()) return value.get<int>();
  if (value.is_string()) {
    const std::string name = value.get<std::string>();
    for (size_t b = 0; b < bodies.size(); ++b) {
      if (bodies[b].name == name) return static_cast<int>(b);
    }
    SchemaError(where, "unknown body \"" + name + "\"");
  }
  SchemaError(where, "expected a body index or name");
}

template <typename Fn>
auto WithOrigin(const fs::path& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace

json ParseJson(const std::string& text, const std::string& origin) {
  // Rewrite bare NaN/Infinity/-Infinity outside strings to null.
  std::string cleaned;
  cleaned.reserve(text.size());
  bool in_string = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      cleaned.push_back(c);
      if (c == '\\' && i + 1 < text.size()) {
        cleaned.push_back(text[++i]);
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
      cleaned.push_back(c);
      continue;
    }
    auto matches = [&](std::string_view token) {
      return text.compare(i, token.size(), token) == 0;
    };
    if (matches("NaN")) {
      cleaned += "null";
      i += 2;
    } else if (matches("-Infinity")) {
      cleaned += "null";
      i += 8;
    } else if (matches("Infinity")) {
      cleaned += "null";
      i += 7;
    } else {
      cleaned.push_back(c);
    }
  }
  try {
    return json::parse(cleaned);
  } catch (const json::parse_error& e) {
    throw FormatError(origin + ": JSON parse error at byte " +
                      std::to_string(e.byte) + ": " + e.what());
  }
}

json ReadJsonFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return ParseJson(buffer.str(), path.string());
}

void WriteTextFile(const std::string& text, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

void WriteJsonFile(const json& doc, const fs::path& path) {
  WriteTextFile(doc.dump(1) + "\n", path);
}

SourceMotion SourceMotionFromJson(const json& doc) {
  SourceMotion motion;
  motion.fps = Number(Field(doc, "fps", "root"), "fps");
  motion.joint_names = Names(Field(doc, "joint_names", "root"), "joint_names");
  const json& frames = Field(doc, "frames", "root");
  if (!frames.is_array()) SchemaError("frames", "expected an array");
  const size_t num_joints = motion.joint_names.size();
  for (size_t t = 0; t < frames.size(); ++t) {
    const std::string where = FrameWhere(t);
    const json& joints = Field(frames[t], "joints", where);
    if (!joints.is_array() || joints.size() != num_joints) {
      SchemaError(where, "expected " + std::to_string(num_joints) +
                             " joint positions");
    }
    std::vector<Vec3> positions;
    positions.reserve(num_joints);
    for (size_t i = 0; i < num_joints; ++i) {
      positions.push_back(
          Point(joints[i], where + ", joint " + motion.joint_names[i]));
    }
    motion.joints.push_back(std::move(positions));
    const json& markers = Field(frames[t], "markers", where);
    for (FootRegion r : kFootRegions) {
      const std::string key(FootRegionName(r));
      const json& list = Field(markers, key.c_str(), where + ", markers");
      if (!list.is_array()) SchemaError(where + ", markers " + key, "expected an array");
      std::vector<Vec3> points;
      for (size_t k = 0; k < list.size(); ++k) {
        points.push_back(Point(list[k], where + ", markers " + key + "[" +
                                            std::to_string(k) + "]"));
      }
      motion.markers[static_cast<int>(r)].push_back(std::move(points));
    }
  }
  try {
    motion.Validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return motion;
}

json SourceMotionToJson(const SourceMotion& motion) {
  json frames = json::array();
  for (int t = 0; t < motion.num_frames(); ++t) {
    json joints = json::array();
    for (const Vec3& p : motion.joints[t]) joints.push_back(PointJson(p));
    json markers = json::object();
    for (FootRegion r : kFootRegions) {
      json list = json::array();
      for (const Vec3& p : motion.markers[static_cast<int>(r)][t]) {
        list.push_back(PointJson(p));
      }
      markers[std::string(FootRegionName(r))] = std::move(list);
    }
    frames.push_back({{"joints", std::move(joints)},
                      {"markers", std::move(markers)}});
  }
  return {{"fps", motion.fps},
          {"joint_names", motion.joint_names},
          {"frames", std::move(frames)}};
}

SourceMotion LoadSourceMotion(const fs::path& path) {
  const json doc = ReadJsonFile(path);
  return WithOrigin(path, [&] { return SourceMotionFromJson(doc); });
}

void SaveSourceMotion(const SourceMotion& motion, const fs::path& path) {
  motion.Validate();
  WriteJsonFile(SourceMotionToJson(motion), path);
}

RetargetedMotion RetargetedMotionFromJson(const json& doc) {
  RetargetedMotion motion;
  motion.fps = Number(Field(doc, "fps", "root"), "fps");
  motion.joint_names = Names(Field(doc, "joint_names", "root"), "joint_names");
  const json& frames = Field(doc, "frames", "root");
  if (!frames.is_array()) SchemaError("frames", "expected an array");
  const size_t nq = motion.joint_names.size();
  for (size_t t = 0; t < frames.size(); ++t) {
    const std::string where = FrameWhere(t);
    const json& q = Field(frames[t], "q", where);
    if (!q.is_array() || q.size() != nq) {
      SchemaError(where, "expected " + std::to_string(nq) + " joint angles");
    }
    Eigen::VectorXd angles(nq);
    for (size_t j = 0; j < nq; ++j) {
      angles[j] = Number(q[j], where + ", q " + motion.joint_names[j]);
    }
    motion.q.push_back(std::move(angles));
    motion.root_pos.push_back(
        Point(Field(frames[t], "root_pos", where), where + ", root_pos"));
    const json& rot = Field(frames[t], "root_rot", where);
    if (!rot.is_array() || rot.size() != 4) {
      SchemaError(where + ", root_rot", "expected [w, x, y, z]");
    }
    const std::string rw = where + ", root_rot";
    motion.root_rot.emplace_back(Number(rot[0], rw), Number(rot[1], rw),
                                 Number(rot[2], rw), Number(rot[3], rw));
  }
  try {
    motion.Validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return motion;
}

json RetargetedMotionToJson(const RetargetedMotion& motion) {
  json frames = json::array();
  for (int t = 0; t < motion.num_frames(); ++t) {
    json q = json::array();
    for (Eigen::Index j = 0; j < motion.q[t].size(); ++j) q.push_back(motion.q[t][j]);
    const Quat& r = motion.root_rot[t];
    frames.push_back({{"q", std::move(q)},
                      {"root_pos", PointJson(motion.root_pos[t])},
                      {"root_rot", json::array({r.w(), r.x(), r.y(), r.z()})}});
  }
  return {{"fps", motion.fps},
          {"joint_names", motion.joint_names},
          {"frames", std::move(frames)}};
}

RetargetedMotion LoadRetargetedMotion(const fs::path& path) {
  const json doc = ReadJsonFile(path);
  return WithOrigin(path, [&] { return RetargetedMotionFromJson(doc); });
}

void SaveRetargetedMotion(const RetargetedMotion& motion, const fs::path& path) {
  motion.Validate();
  WriteJsonFile(RetargetedMotionToJson(motion), path);
}

RobotModel RobotModelFromJson(const json& doc) {
  std::vector<RobotBody> bodies;
  const json& bodies_doc = Field(doc, "bodies", "root");
  if (!bodies_doc.is_array()) SchemaError("bodies", "expected an array");
  for (size_t b = 0; b < bodies_doc.size(); ++b) {
    const std::string where = "bodies[" + std::to_string(b) + "]";
    RobotBody body;
    const json& name = Field(bodies_doc[b], "name", where);
    if (!name.is_string()) SchemaError(where + ".name", "expected a string");
    body.name = name.get<std::string>();
    const json& parent = Field(bodies_doc[b], "parent", where);
    body.parent = parent.is_null() ? -1 : BodyRef(parent, bodies, where + ".parent");
    body.offset = Point(Field(bodies_doc[b], "offset", where), where + ".offset");
    bodies.push_back(std::move(body));
  }
  std::vector<RobotJoint> joints;
  const json& joints_doc = Field(doc, "joints", "root");
  if (!joints_doc.is_array()) SchemaError("joints", "expected an array");
  for (size_t j = 0; j < joints_doc.size(); ++j) {
    const std::string where = "joints[" + std::to_string(j) + "]";
    const json& item = joints_doc[j];
    RobotJoint joint;
    const json& name = Field(item, "name", where);
    if (!name.is_string()) SchemaError(where + ".name", "expected a string");
    joint.name = name.get<std::string>();
    joint.body = BodyRef(Field(item, "body", where), bodies, where + ".body");
    joint.axis = Point(Field(item, "axis", where), where + ".axis");
    joint.q_min = Number(Field(item, "q_min", where), where + ".q_min");
    joint.q_max = Number(Field(item, "q_max", where), where + ".q_max");
    joint.v_max = Number(Field(item, "v_max", where), where + ".v_max");
    joints.push_back(std::move(joint));
  }
  std::array<FootSite, kNumFootRegions> sites{};
  const json& sites_doc = Field(doc, "foot_sites", "root");
  for (FootRegion r : kFootRegions) {
    const std::string key(FootRegionName(r));
    const std::string where = "foot_sites." + key;
    const json& site = Field(sites_doc, key.c_str(), "foot_sites");
    sites[static_cast<int>(r)].body =
        BodyRef(Field(site, "body", where), bodies, where + ".body");
    sites[static_cast<int>(r)].offset =
        Point(Field(site, "offset", where), where + ".offset");
  }
  const auto balance = Names(Field(doc, "balance_bodies", "root"), "balance_bodies");
  if (balance.size() != 2) SchemaError("balance_bodies", "expected two names");
  try {
    return RobotModel(std::move(bodies), std::move(joints), sites,
                      {balance[0], balance[1]});
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

json RobotModelToJson(const RobotModel& model) {
  json bodies = json::array();
  for (const RobotBody& b : model.bodies()) {
    bodies.push_back(
        {{"name", b.name}, {"parent", b.parent}, {"offset", PointJson(b.offset)}});
  }
  json joints = json::array();
  for (const RobotJoint& j : model.joints()) {
    joints.push_back({{"name", j.name},
                      {"body", j.body},
                      {"axis", PointJson(j.axis)},
                      {"q_min", j.q_min},
                      {"q_max", j.q_max},
                      {"v_max", j.v_max}});
  }
  json sites = json::object();
  for (FootRegion r : kFootRegions) {
    const FootSite& s = model.foot_site(r);
    sites[std::string(FootRegionName(r))] = {{"body", s.body},
                                             {"offset", PointJson(s.offset)}};
  }
  return {{"bodies", std::move(bodies)},
          {"joints", std::move(joints)},
          {"foot_sites", std::move(sites)},
          {"balance_bodies", model.balance_bodies()}};
}

RobotModel LoadRobotModel(const fs::path& path) {
  const json doc = ReadJsonFile(path);
  return WithOrigin(path, [&] { return RobotModelFromJson(doc); });
}

void SaveRobotModel(const RobotModel& model, const fs::path& path) {
  WriteJsonFile(RobotModelToJson(model), path);
}

std::string FormatNumber(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

}  // namespace groundwork
