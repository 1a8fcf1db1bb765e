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

// Quasi-static single-point pushing.
//
// The support friction is an ellipsoidal limit surface centred on the CoF,
//   H(f) = (fy/f_max)^2 + (fz/f_max)^2 + (m/m_max)^2,
// so the object twist is parallel to grad H. The pusher is a disc in
// Coulomb contact with the object outline. A substep moves the disc, and any
// overlap is removed by advancing the object along the resolved twist.

#ifndef TACPUSH_PUSH_DYNAMICS_HPP_
#define TACPUSH_PUSH_DYNAMICS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tacpush/scene.hpp"

namespace tacpush {

inline constexpr double kSubstepCap = 0.5;              // mm
inline constexpr double kPenetrationTolerance = 0.01;   // mm
inline constexpr int kMaxResolveIterations = 50;

/// Planar twist of the object at its CoF, work frame. omega is rad per unit
/// pseudo-time about +x. Only the direction is meaningful.
struct Twist2 {
  double vy = 0;
  double vz = 0;
  double omega = 0;

  Vec2 linear() const { return {vy, vz}; }
  /// (vy, vz, omega * length), the coordinates used for normalization.
  Eigen::Vector3d scaled(double length) const {
    return {vy, vz, omega * length};
  }
};

enum class ContactMode { kSeparated, kSticking, kSlidingLeft, kSlidingRight };

const char* to_string(ContactMode mode);

struct ContactState {
  Vec2 point = Vec2::Zero();   // work frame
  Vec2 normal = Vec2::Zero();  // unit, pointing into the object
  ContactMode mode = ContactMode::kSeparated;
  double penetration = 0;      // mm
};

class PhysicsFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maps a support wrench (fy, fz in N; m in N mm, about the CoF) to the
/// twist normal to the limit surface, normalized so that
/// |(vy, vz, omega * m_max / f_max)| = 1. Throws std::invalid_argument for a
/// zero wrench.
Twist2 limit_surface_twist(const Eigen::Vector3d& wrench,
                           const ObjectShape& shape);

/// Contact-point velocity directions produced by the two friction-cone edge
/// forces. `left` is the image of n + mu t, `right` of n - mu t, with t the
/// normal rotated by +90 degrees.
struct MotionCone {
  Vec2 left;
  Vec2 right;
};

MotionCone motion_cone(const ContactState& contact, const ObjectShape& shape,
                       const PlanarPose& object_pose);

/// Velocity-level solution of one pusher contact.
struct ContactResolution {
  Twist2 twist;  // scaled so the contact normal velocity matches the pusher
  ContactMode mode = ContactMode::kSticking;
  Vec2 force = Vec2::Zero();  // pusher force direction on the object
};

/// Solves the sticking / sliding problem for a pusher point moving with
/// `pusher_velocity` against the object at `point` with inward `normal`.
/// Requires pusher_velocity . normal > 0.
ContactResolution resolve_contact_velocity(const Vec2& point,
                                           const Vec2& normal,
                                           const Vec2& pusher_velocity,
                                           const ObjectShape& shape,
                                           const PlanarPose& object_pose);

/// Rigid motion of the object by `scale` times the twist, exact in rotation.
PlanarPose apply_twist(const PlanarPose& object_pose, const ObjectShape& shape,
                       const Twist2& twist, double scale);

struct SubstepResult {
  PlanarPose object_pose;
  ContactState contact;
  int iterations = 0;
};

/// Moves the pusher disc by `pusher_disp` and pushes the object out of any
/// resulting overlap. Throws PhysicsFault when the overlap cannot be removed
/// within kMaxResolveIterations, std::invalid_argument when the displacement
/// exceeds kSubstepCap.
SubstepResult resolve_substep(const WorldState& world, const ObjectShape& shape,
                              const PusherTip& tip, const Vec2& pusher_disp);

enum class TapPhase { kRelocate, kForward, kRetract };

struct TapSample {
  TapPhase phase;
  PlanarPose pusher;
  PlanarPose object;
  ContactMode mode;
  double penetration;
};

struct TapMotion {
  double forward = 10;  // mm along the sensor axis
  double back = 5;      // mm
  double substep = kSubstepCap;
};

struct TapResult {
  WorldState world;           // after the retraction
  WorldState at_full_stroke;  // end of the forward stroke
  std::vector<TapSample> trajectory;
};

/// Relocates the pusher in a straight line to `commanded_pose`, then taps
/// forward and back along the commanded central axis. Every leg is
/// substepped through resolve_substep with physics active.
TapResult simulate_tap(const WorldState& world, const ObjectShape& shape,
                       const PusherTip& tip, const Transformd& commanded_pose,
                       const TapMotion& motion = {});

}  // namespace tacpush

#endif  // TACPUSH_PUSH_DYNAMICS_HPP_
