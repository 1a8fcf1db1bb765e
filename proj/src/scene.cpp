// Copyright 2026 The tacpush Authors
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

#include "tacpush/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace tacpush {

namespace {

constexpr double kGravity = 9.81;         // m/s^2
constexpr double kSupportFriction = 0.5;  // object-surface Coulomb coefficient
constexpr double kMomentScale = 0.6;
constexpr int kSupportGrid = 400;

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c,
                        const Vec2& d) {
  auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    return cross2(q - p, r - p);
  };
  auto on_segment = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    return std::min(p.x(), q.x()) <= r.x() && r.x() <= std::max(p.x(), q.x()) &&
           std::min(p.y(), q.y()) <= r.y() && r.y() <= std::max(p.y(), q.y());
  };
  const double d1 = orient(c, d, a);
  const double d2 = orient(c, d, b);
  const double d3 = orient(a, b, c);
  const double d4 = orient(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

bool point_in_polygon(const Polygon& poly, const Vec2& p) {
  const auto& v = poly.vertices;
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i].y() > p.y()) != (v[j].y() > p.y())) {
      const double x = v[j].x() + (p.y() - v[j].y()) * (v[i].x() - v[j].x()) /
                                      (v[i].y() - v[j].y());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

struct LocalClosest {
  Vec2 point;
  Vec2 normal;
  Feature feature;
  double distance;
  bool inside;
};

LocalClosest closest_on_polygon(const Polygon& poly, const Vec2& p) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  LocalClosest best{};
  best.distance = std::numeric_limits<double>::infinity();
  double best_t = 0;
  std::size_t best_edge = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % n];
    const Vec2 d = b - a;
    const double t = std::clamp((p - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
    const Vec2 q = a + t * d;
    const double dist = (p - q).norm();
    if (dist < best.distance) {
      best.distance = dist;
      best.point = q;
      best_t = t;
      best_edge = i;
    }
  }
  best.inside = point_in_polygon(poly, p);

  if (best_t > 0.0 && best_t < 1.0) {
    const Vec2 d = v[(best_edge + 1) % n] - v[best_edge];
    best.normal = Vec2(d.y(), -d.x()).normalized();
    best.feature = {FeatureKind::kEdge, static_cast<int>(best_edge)};
    return best;
  }

  const std::size_t vi = best_t <= 0.0 ? best_edge : (best_edge + 1) % n;
  best.feature = {FeatureKind::kVertex, static_cast<int>(vi)};
  const Vec2 offset = p - v[vi];
  if (offset.norm() > 1e-12) {
    best.normal = best.inside ? Vec2(-offset.normalized()) : offset.normalized();
  } else {
    const Vec2 d_in = v[vi] - v[(vi + n - 1) % n];
    const Vec2 d_out = v[(vi + 1) % n] - v[vi];
    const Vec2 n_in = Vec2(d_in.y(), -d_in.x()).normalized();
    const Vec2 n_out = Vec2(d_out.y(), -d_out.x()).normalized();
    best.normal = (n_in + n_out).normalized();
  }
  return best;
}

}  // namespace

Vec2 rotate_planar(const Vec2& v, double deg) {
  const double a = deg_to_rad(deg);
  const double c = std::cos(a), s = std::sin(a);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

Vec2 heading_axis(double alpha_deg) {
  const double a = deg_to_rad(alpha_deg);
  return {-std::sin(a), std::cos(a)};
}

Vec2 lateral_axis(double alpha_deg) {
  const double a = deg_to_rad(alpha_deg);
  return {std::cos(a), std::sin(a)};
}

double heading_of(const Vec2& dir) {
  return normalize_angle_deg(rad_to_deg(std::atan2(-dir.x(), dir.y())));
}

Transformd planar_to_transform(const PlanarPose& p) {
  return euler_to_transform(EulerPosed{0, p.y, p.z, p.alpha, 0, 0});
}

PlanarPose transform_to_planar(const Transformd& t) {
  // The in-plane heading is read from the image of the central axis so that
  // tiny out-of-plane residue cannot flip it through the gimbal branch.
  const Eigen::Vector3d axis = t.rotation().col(2);
  return {t.translation().y(), t.translation().z(),
          heading_of(Vec2(axis.y(), axis.z()))};
}

Vec2 object_to_world(const PlanarPose& object_pose, const Vec2& local) {
  return rotate_planar(local, object_pose.alpha) + object_pose.position();
}

Vec2 world_to_object(const PlanarPose& object_pose, const Vec2& world) {
  return rotate_planar(world - object_pose.position(), -object_pose.alpha);
}

double polygon_signed_area(const Polygon& poly) {
  const auto& v = poly.vertices;
  double a = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    a += cross2(v[i], v[(i + 1) % v.size()]);
  }
  return 0.5 * a;
}

Vec2 polygon_centroid(const Polygon& poly) {
  const auto& v = poly.vertices;
  Vec2 c = Vec2::Zero();
  double a = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& p = v[i];
    const Vec2& q = v[(i + 1) % v.size()];
    const double w = cross2(p, q);
    a += w;
    c += (p + q) * w;
  }
  return c / (3.0 * a);
}

bool polygon_is_simple(const Polygon& poly) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Adjacent edges share a vertex by construction.
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) {
        return false;
      }
    }
  }
  return true;
}

bool polygon_is_convex(const Polygon& poly) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = v[(i + 1) % n] - v[i];
    const Vec2 b = v[(i + 2) % n] - v[(i + 1) % n];
    if (cross2(a, b) < 0) return false;
  }
  return true;
}

bool point_in_outline(const Outline& outline, const Vec2& local) {
  if (const auto* circle = std::get_if<Circle>(&outline)) {
    return local.norm() < circle->radius;
  }
  return point_in_polygon(std::get<Polygon>(outline), local);
}

double mean_support_radius(const Outline& outline, const Vec2& centre) {
  Vec2 lo, hi;
  if (const auto* circle = std::get_if<Circle>(&outline)) {
    lo = Vec2::Constant(-circle->radius);
    hi = Vec2::Constant(circle->radius);
  } else {
    const auto& v = std::get<Polygon>(outline).vertices;
    lo = hi = v.front();
    for (const auto& p : v) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
  }
  const Vec2 step = (hi - lo) / kSupportGrid;
  double sum = 0;
  long count = 0;
  for (int i = 0; i < kSupportGrid; ++i) {
    for (int j = 0; j < kSupportGrid; ++j) {
      const Vec2 p = lo + Vec2((i + 0.5) * step.x(), (j + 0.5) * step.y());
      if (point_in_outline(outline, p)) {
        sum += (p - centre).norm();
        ++count;
      }
    }
  }
  return count > 0 ? sum / static_cast<double>(count) : 0.0;
}

ObjectShape make_shape(std::string name, Outline outline, double mass_kg,
                       double mu_contact, std::string description) {
  ObjectShape s;
  s.name = std::move(name);
  s.outline = std::move(outline);
  s.cof_offset = s.is_circle() ? Vec2::Zero() : polygon_centroid(s.polygon());
  s.f_max = kSupportFriction * mass_kg * kGravity;
  s.m_max = kMomentScale * mean_support_radius(s.outline, s.cof_offset) * s.f_max;
  s.mu_contact = mu_contact;
  s.description = std::move(description);
  return s;
}

void validate_shape(const ObjectShape& shape) {
  const std::string who = "shape '" + shape.name + "': ";
  if (!(shape.f_max > 0)) throw InvariantViolation(who + "f_max must be > 0");
  if (!(shape.m_max > 0)) throw InvariantViolation(who + "m_max must be > 0");
  if (!(shape.mu_contact >= 0)) {
    throw InvariantViolation(who + "mu_contact must be >= 0");
  }
  if (shape.is_circle()) {
    if (!(shape.circle().radius > 0)) {
      throw InvariantViolation(who + "circle radius must be > 0");
    }
  } else {
    const auto& poly = shape.polygon();
    if (poly.vertices.size() < 3) {
      throw InvariantViolation(who + "polygon needs at least 3 vertices");
    }
    if (!polygon_is_simple(poly)) {
      throw InvariantViolation(who + "polygon is self-intersecting");
    }
    if (!(polygon_signed_area(poly) > 0)) {
      throw InvariantViolation(who + "polygon must be counter-clockwise");
    }
  }
  if (!point_in_outline(shape.outline, shape.cof_offset)) {
    throw InvariantViolation(who + "cof_offset lies outside the outline");
  }
}

BoundaryPoint closest_boundary_point(const ObjectShape& shape,
                                     const PlanarPose& object_pose,
                                     const Vec2& p) {
  const Vec2 local = world_to_object(object_pose, p);
  LocalClosest lc;
  if (shape.is_circle()) {
    const double r = shape.circle().radius;
    const double d = local.norm();
    const Vec2 dir = d > 1e-12 ? Vec2(local / d) : Vec2(1, 0);
    lc.point = r * dir;
    lc.normal = dir;
    lc.feature = {FeatureKind::kArc, 0};
    lc.distance = std::abs(d - r);
    lc.inside = d < r;
  } else {
    lc = closest_on_polygon(shape.polygon(), local);
  }
  BoundaryPoint bp;
  bp.point = object_to_world(object_pose, lc.point);
  bp.outward_normal = rotate_planar(lc.normal, object_pose.alpha);
  bp.feature = lc.feature;
  bp.signed_distance = lc.inside ? -lc.distance : lc.distance;
  return bp;
}

std::vector<Vec2> outline_world(const ObjectShape& shape,
                                const PlanarPose& object_pose,
                                int circle_segments) {
  std::vector<Vec2> out;
  if (shape.is_circle()) {
    const double r = shape.circle().radius;
    for (int i = 0; i < circle_segments; ++i) {
      const double a = 2.0 * std::numbers::pi * i / circle_segments;
      out.push_back(object_to_world(object_pose, Vec2(r * std::cos(a),
                                                      r * std::sin(a))));
    }
  } else {
    for (const auto& v : shape.polygon().vertices) {
      out.push_back(object_to_world(object_pose, v));
    }
  }
  return out;
}

EulerPosed work_frame_in_base() { return {-85, -330, 70, 180, -90, 0}; }

}  // namespace tacpush
