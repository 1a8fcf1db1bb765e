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

#ifndef TACPUSH_SCENE_HPP_
#define TACPUSH_SCENE_HPP_

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "tacpush/pose_math.hpp"

namespace tacpush {

// The support plane is the (y, z) plane of the work frame with normal +x.
// Planar vectors are stored as (y, z) and a heading alpha (degrees) is the
// extrinsic-xyz alpha angle, i.e. a rotation about +x.
using Vec2 = Eigen::Vector2d;

/// Pose of a frame in the support plane.
struct PlanarPose {
  double y = 0;
  double z = 0;
  double alpha = 0;  // degrees

  Vec2 position() const { return {y, z}; }
  bool operator==(const PlanarPose&) const = default;
};

/// Rotates a planar vector by `deg` about +x.
Vec2 rotate_planar(const Vec2& v, double deg);

/// Central (+z) axis of a frame with planar heading `alpha_deg`.
Vec2 heading_axis(double alpha_deg);

/// Lateral (+y) axis of a frame with planar heading `alpha_deg`.
Vec2 lateral_axis(double alpha_deg);

/// Heading whose central axis points along `dir`.
double heading_of(const Vec2& dir);

/// 2D cross product a x b in (y, z) order (the +x component of the 3D one).
inline double cross2(const Vec2& a, const Vec2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

/// Rotates by +90 degrees.
inline Vec2 perp(const Vec2& v) { return {-v.y(), v.x()}; }

Transformd planar_to_transform(const PlanarPose& p);

/// Drops x, beta and gamma. Exact for transforms that live in the plane.
PlanarPose transform_to_planar(const Transformd& t);

/// Object frame -> work frame.
Vec2 object_to_world(const PlanarPose& object_pose, const Vec2& local);
Vec2 world_to_object(const PlanarPose& object_pose, const Vec2& world);

class InvariantViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Polygon {
  std::vector<Vec2> vertices;  // counter-clockwise, object frame, mm
};

struct Circle {
  double radius = 0;  // mm, centred on the object frame origin
};

using Outline = std::variant<Polygon, Circle>;

struct ObjectShape {
  std::string name;
  Outline outline;
  Vec2 cof_offset = Vec2::Zero();  // centre of friction, object frame
  double f_max = 1;                // N
  double m_max = 1;                // N mm
  double mu_contact = 0.5;         // pusher-object Coulomb coefficient
  std::string description;

  bool is_circle() const { return std::holds_alternative<Circle>(outline); }
  const Polygon& polygon() const { return std::get<Polygon>(outline); }
  const Circle& circle() const { return std::get<Circle>(outline); }

  /// m_max / f_max, the characteristic length of the limit surface.
  double friction_radius() const { return m_max / f_max; }
};

struct PusherTip {
  double radius = 20;  // mm
};

/// Simulator ground truth for one trial.
struct WorldState {
  PlanarPose object_pose;   // object frame in the work frame
  Transformd pusher_pose;   // sensor frame (tip centre) in the work frame
  int tap_index = 0;
};

/// Throws InvariantViolation naming the broken property.
void validate_shape(const ObjectShape& shape);

double polygon_signed_area(const Polygon& poly);
Vec2 polygon_centroid(const Polygon& poly);
bool polygon_is_simple(const Polygon& poly);
bool polygon_is_convex(const Polygon& poly);
bool point_in_outline(const Outline& outline, const Vec2& local);

/// Area-weighted mean distance from `centre` over the outline region.
double mean_support_radius(const Outline& outline, const Vec2& centre);

/// Builds the support-friction parameters for a uniform pressure
/// distribution: f_max = mu_s m g and m_max = 0.6 * mean radius * f_max.
ObjectShape make_shape(std::string name, Outline outline, double mass_kg,
                       double mu_contact, std::string description);

enum class FeatureKind { kEdge, kVertex, kArc };

struct Feature {
  FeatureKind kind = FeatureKind::kEdge;
  int index = 0;  // edge i joins vertex i and i+1; arc is always 0
};

struct BoundaryPoint {
  Vec2 point;           // work frame
  Vec2 outward_normal;  // unit, work frame
  Feature feature;
  double signed_distance = 0;  // from the query point; negative inside
};

/// Globally nearest boundary point of the placed shape to `p` (work frame).
///
/// On an edge interior the normal is the edge normal. At a vertex it points
/// from the vertex toward `p` (or away from `p` when `p` is inside).
BoundaryPoint closest_boundary_point(const ObjectShape& shape,
                                     const PlanarPose& object_pose,
                                     const Vec2& p);

/// Named catalog of built-in shapes.
const std::vector<ObjectShape>& builtin_shapes();

/// Throws std::out_of_range for unknown names.
const ObjectShape& builtin_shape(const std::string& name);

/// Outline vertices in the work frame (circles are sampled).
std::vector<Vec2> outline_world(const ObjectShape& shape,
                                const PlanarPose& object_pose,
                                int circle_segments = 64);

/// Pose of the work frame in the robot base frame of the reference rig.
EulerPosed work_frame_in_base();

}  // namespace tacpush

#endif  // TACPUSH_SCENE_HPP_
