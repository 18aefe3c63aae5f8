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

#include "groundwork/curation/support.h"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace groundwork {

namespace {

double Cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

// Strict left turn o -> a -> b. Turns with |sin| below 1e-12 count as
// straight, so rounding cannot keep a collinear point as a vertex.
bool LeftTurn(const Vec2& o, const Vec2& a, const Vec2& b) {
  return Cross(o, a, b) > 1e-12 * (a - o).norm() * (b - o).norm();
}

double SegmentDistance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double s = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + s * ab)).norm();
}

}  // namespace

SupportPolygon BaseOfSupport(std::span<const Vec3> points) {
  if (points.empty()) throw std::invalid_argument("base of support needs a point");
  std::vector<Vec2> pts;
  pts.reserve(points.size());
  for (const Vec3& p : points) pts.emplace_back(p.x(), p.y());
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return {pts};

  std::vector<Vec2> hull(2 * pts.size());
  size_t k = 0;
  for (const Vec2& p : pts) {
    while (k >= 2 && !LeftTurn(hull[k - 2], hull[k - 1], p)) --k;
    hull[k++] = p;
  }
  for (size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && !LeftTurn(hull[k - 2], hull[k - 1], pts[i])) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return {hull};
}

double DistanceToSupport(const Vec3& point, const SupportPolygon& hull) {
  const auto& v = hull.vertices;
  if (v.empty()) throw std::invalid_argument("empty support polygon");
  const Vec2 p(point.x(), point.y());
  if (v.size() == 1) return (p - v[0]).norm();
  if (v.size() == 2) return SegmentDistance(p, v[0], v[1]);

  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < v.size(); ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % v.size()];
    if (Cross(a, b, p) < 0.0) inside = false;
    best = std::min(best, SegmentDistance(p, a, b));
  }
  return inside ? 0.0 : best;
}

}  // namespace groundwork
