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

#include "tacpush/push_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/LU>

namespace tacpush {

namespace {

// Overlap left behind by the resolution step. Sitting strictly inside the
// tolerance band keeps a pushed contact detectable by the sensor model.
constexpr double kResidualTarget = 0.5 * kPenetrationTolerance;
constexpr double kConeTolerance = 1e-12;

Vec2 cof_world(const ObjectShape& shape, const PlanarPose& pose) {
  return object_to_world(pose, shape.cof_offset);
}

// Contact-point velocity map. With the twist taken as (f, (r x f) / c^2) in
// units where f_max = 1, the object velocity at the contact point is A f
// with A = I + perp(r) perp(r)^T / c^2.
Eigen::Matrix2d contact_mobility(const Vec2& r, double c) {
  const Vec2 q = perp(r);
  return Eigen::Matrix2d::Identity() + q * q.transpose() / (c * c);
}

Twist2 twist_from_force(const Vec2& r, const Vec2& f, double c) {
  return {f.x(), f.y(), cross2(r, f) / (c * c)};
}

}  // namespace

const char* to_string(ContactMode mode) {
  switch (mode) {
    case ContactMode::kSeparated:
      return "separated";
    case ContactMode::kSticking:
      return "sticking";
    case ContactMode::kSlidingLeft:
      return "sliding_left";
    case ContactMode::kSlidingRight:
      return "sliding_right";
  }
  return "unknown";
}

Twist2 limit_surface_twist(const Eigen::Vector3d& wrench,
                           const ObjectShape& shape) {
  if (wrench.squaredNorm() == 0.0) {
    throw std::invalid_argument("limit_surface_twist: zero wrench");
  }
  const double f2 = shape.f_max * shape.f_max;
  const double m2 = shape.m_max * shape.m_max;
  Twist2 t{wrench(0) / f2, wrench(1) / f2, wrench(2) / m2};
  const double norm = t.scaled(shape.friction_radius()).norm();
  t.vy /= norm;
  t.vz /= norm;
  t.omega /= norm;
  return t;
}

MotionCone motion_cone(const ContactState& contact, const ObjectShape& shape,
                       const PlanarPose& object_pose) {
  const Vec2 r = contact.point - cof_world(shape, object_pose);
  const Vec2 n = contact.normal.normalized();
  const Vec2 t = perp(n);
  const double mu = shape.mu_contact;
  const Eigen::Matrix2d a = contact_mobility(r, shape.friction_radius());
  return {(a * (n + mu * t)).normalized(), (a * (n - mu * t)).normalized()};
}

ContactResolution resolve_contact_velocity(const Vec2& point,
                                           const Vec2& normal,
                                           const Vec2& pusher_velocity,
                                           const ObjectShape& shape,
                                           const PlanarPose& object_pose) {
  const Vec2 r = point - cof_world(shape, object_pose);
  const Vec2 n = normal.normalized();
  const Vec2 t = perp(n);
  const double mu = shape.mu_contact;
  const double c = shape.friction_radius();
  const Eigen::Matrix2d a = contact_mobility(r, c);
  const double vp_n = pusher_velocity.dot(n);
  if (!(vp_n > 0)) {
    throw std::invalid_argument(
        "resolve_contact_velocity: pusher is not moving into the object");
  }

  // Sticking: the object contact point moves exactly with the pusher.
  const Vec2 f_stick = a.inverse() * pusher_velocity;
  const double fn = f_stick.dot(n);
  const double ft = f_stick.dot(t);
  if (fn > 0 && std::abs(ft) <= mu * fn * (1 + kConeTolerance)) {
    return {twist_from_force(r, f_stick, c), ContactMode::kSticking, f_stick};
  }

  // Sliding: force on a friction-cone edge, friction opposing the slip of
  // the object relative to the pusher.
  ContactResolution best;
  double best_violation = std::numeric_limits<double>::infinity();
  bool found = false;
  for (const double side : {1.0, -1.0}) {
    const Vec2 f = n + side * mu * t;
    const Vec2 v = a * f;
    const double vn = v.dot(n);
    if (!(vn > 0)) continue;
    const double k = vp_n / vn;
    const double slip = side * (pusher_velocity - k * v).dot(t);
    const double violation = std::max(0.0, -slip);
    if (violation < best_violation) {
      best_violation = violation;
      const Twist2 tw = twist_from_force(r, f, c);
      best.twist = {k * tw.vy, k * tw.vz, k * tw.omega};
      best.mode = side > 0 ? ContactMode::kSlidingLeft
                           : ContactMode::kSlidingRight;
      best.force = f;
      found = true;
    }
  }
  if (!found) {
    // Both edge images point out of the contact; fall back to the frictionless
    // push so the overlap can still be removed.
    const Vec2 v = a * n;
    const double k = vp_n / v.dot(n);
    const Twist2 tw = twist_from_force(r, n, c);
    best.twist = {k * tw.vy, k * tw.vz, k * tw.omega};
    best.mode = ContactMode::kSlidingLeft;
    best.force = n;
  }
  return best;
}

PlanarPose apply_twist(const PlanarPose& object_pose, const ObjectShape& shape,
                       const Twist2& twist, double scale) {
  const Vec2 c = cof_world(shape, object_pose);
  const double dtheta = rad_to_deg(twist.omega * scale);
  const Vec2 c_new = c + scale * twist.linear();
  const Vec2 origin =
      c_new + rotate_planar(object_pose.position() - c, dtheta);
  return {origin.x(), origin.y(),
          normalize_angle_deg(object_pose.alpha + dtheta)};
}

SubstepResult resolve_substep(const WorldState& world, const ObjectShape& shape,
                              const PusherTip& tip, const Vec2& pusher_disp) {
  if (pusher_disp.norm() > kSubstepCap * (1 + 1e-9)) {
    throw std::invalid_argument("resolve_substep: displacement exceeds cap");
  }
  const Vec2 centre = world.pusher_pose.translation().tail<2>() + pusher_disp;

  SubstepResult out;
  out.object_pose = world.object_pose;
  bool moved = false;
  for (int it = 0;; ++it) {
    const BoundaryPoint bp =
        closest_boundary_point(shape, out.object_pose, centre);
    const double pen = tip.radius - bp.signed_distance;
    const Vec2 normal_in = -bp.outward_normal;
    out.contact.point = bp.point;
    out.contact.normal = normal_in;
    out.contact.penetration = pen;
    if (pen <= kPenetrationTolerance) {
      if (pen <= 0) {
        out.contact.mode = ContactMode::kSeparated;
      } else if (!moved) {
        out.contact.mode = ContactMode::kSticking;
      }
      out.iterations = it;
      return out;
    }
    if (it == kMaxResolveIterations) {
      std::ostringstream msg;
      msg << "overlap resolution did not converge: penetration " << pen
          << " mm after " << it << " iterations (object " << out.object_pose.y
          << ", " << out.object_pose.z << ", " << out.object_pose.alpha
          << "; pusher " << centre.x() << ", " << centre.y() << ")";
      throw PhysicsFault(msg.str());
    }

    // The pusher approach direction decides the contact mode. When the disc
    // is not advancing into the surface (grazing moves, overlap created by
    // geometry alone), push out along the normal and keep the tangential
    // part of the motion.
    Vec2 vp = pusher_disp;
    if (!(vp.dot(normal_in) > 1e-9 * std::max(1.0, vp.norm()))) {
      const Vec2 t = perp(normal_in);
      vp = pusher_disp.dot(t) * t + pen * normal_in;
    }
    const ContactResolution res = resolve_contact_velocity(
        bp.point, normal_in, vp, shape, out.object_pose);
    const double scale = (pen - kResidualTarget) / vp.dot(normal_in);
    out.object_pose = apply_twist(out.object_pose, shape, res.twist, scale);
    if (!moved) out.contact.mode = res.mode;
    moved = true;
  }
}

TapResult simulate_tap(const WorldState& world, const ObjectShape& shape,
                       const PusherTip& tip, const Transformd& commanded_pose,
                       const TapMotion& motion) {
  TapResult result;
  WorldState w = world;
  PlanarPose pusher = transform_to_planar(w.pusher_pose);

  auto run_leg = [&](TapPhase phase, const Vec2& delta, double dheading) {
    const int n = std::max(
        1, static_cast<int>(std::ceil(delta.norm() / motion.substep - 1e-9)));
    const Vec2 start = pusher.position();
    const double start_heading = pusher.alpha;
    for (int i = 1; i <= n; ++i) {
      const double s = static_cast<double>(i) / n;
      const Vec2 next = start + s * delta;
      const Vec2 disp = next - pusher.position();
      w.pusher_pose = planar_to_transform(pusher);
      const SubstepResult sub = resolve_substep(w, shape, tip, disp);
      pusher = {next.x(), next.y(),
                normalize_angle_deg(start_heading + s * dheading)};
      w.object_pose = sub.object_pose;
      w.pusher_pose = planar_to_transform(pusher);
      result.trajectory.push_back(
          {phase, pusher, w.object_pose, sub.contact.mode,
           sub.contact.penetration});
    }
  };

  const PlanarPose target = transform_to_planar(commanded_pose);
  run_leg(TapPhase::kRelocate, target.position() - pusher.position(),
          normalize_angle_deg(target.alpha - pusher.alpha));
  pusher = target;  // snap away accumulated rounding in the heading

  const Vec2 axis = heading_axis(target.alpha);
  run_leg(TapPhase::kForward, motion.forward * axis, 0.0);
  w.pusher_pose = planar_to_transform(pusher);
  result.at_full_stroke = w;

  run_leg(TapPhase::kRetract, -motion.back * axis, 0.0);
  w.pusher_pose = planar_to_transform(pusher);
  ++w.tap_index;
  result.at_full_stroke.tap_index = w.tap_index;
  result.world = w;
  return result;
}

}  // namespace tacpush
