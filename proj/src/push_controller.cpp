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

#include "tacpush/push_controller.hpp"

#include <cmath>

#include "tacpush/scene.hpp"

namespace tacpush {

void ControllerConfig::validate() const {
  auto nonempty = [](const Range& r, const char* name) {
    if (!(r.lo < r.hi)) {
      throw InvariantViolation(std::string("controller: ") + name +
                               " must be a nonempty range");
    }
  };
  nonempty(integral_clip_translation, "integral_clip_translation");
  nonempty(integral_clip_rotation, "integral_clip_rotation");
  nonempty(alignment_output_clip, "alignment_output_clip");
  if (!(approach_zone_radius > 0) || !(termination_radius > 0)) {
    throw InvariantViolation("controller: radii must be > 0");
  }
  if (!(termination_radius < approach_zone_radius)) {
    throw InvariantViolation(
        "controller: termination_radius must be below approach_zone_radius");
  }
  if (!(tap_forward > 0) || !(tap_back >= 0)) {
    throw InvariantViolation("controller: tap distances must be positive");
  }
  if (reacquire_taps < 0) {
    throw InvariantViolation("controller: reacquire_taps must be >= 0");
  }
}

const char* to_string(ControlStatus status) {
  switch (status) {
    case ControlStatus::kContinue:
      return "continue";
    case ControlStatus::kTargetReached:
      return "target_reached";
    case ControlStatus::kLostContact:
      return "lost_contact";
  }
  return "unknown";
}

EulerPosed servo_error(const Transformd& pred_pose, const Transformd& ref_pose) {
  return transform_to_euler(pred_pose.inverse() * ref_pose);
}

EulerPosed pid6_step(ControllerState& state, const EulerPosed& error,
                     const ControllerConfig& cfg) {
  const Vector6d e = error.vector();
  state.integral6 += e;
  for (int i = 0; i < 3; ++i) {
    state.integral6(i) = cfg.integral_clip_translation.clip(state.integral6(i));
    state.integral6(i + 3) =
        cfg.integral_clip_rotation.clip(state.integral6(i + 3));
  }
  const Vector6d de = e - state.prev_error6;
  state.prev_error6 = e;
  return EulerPosed::FromVector(cfg.Kp * e + cfg.Ki * state.integral6 +
                                cfg.Kd * de);
}

Bearing target_bearing(const Transformd& u_correction,
                       const Transformd& pusher_pose,
                       const Transformd& target_pose) {
  const EulerPosed p = transform_to_euler(u_correction.inverse() *
                                          pusher_pose.inverse() * target_pose);
  return {rad_to_deg(std::atan2(p.y, p.z)), std::hypot(p.y, p.z)};
}

double alignment_pid_step(ControllerState& state, double theta,
                          const ControllerConfig& cfg, bool engaged) {
  if (!engaged) return 0.0;
  const double eps = normalize_angle_deg(cfg.theta_ref - theta);
  state.integral_theta += eps;
  // The bearing wraps at +-180; the difference is taken on the circle.
  const double deps = normalize_angle_deg(eps - state.prev_epsilon);
  state.prev_epsilon = eps;
  return cfg.alignment_output_clip.clip(
      cfg.kp * eps + cfg.ki * state.integral_theta + cfg.kd * deps);
}

Transformd compose_command(const Transformd& u_servo, double v,
                           const Transformd& pusher_pose) {
  const Transformd u_align =
      euler_to_transform(EulerPosed{0, v, 0, 0, 0, 0});
  return reorthonormalize_if_drifted(pusher_pose * (u_servo * u_align));
}

ControlOutput control_step(const ControlInput& input, ControllerState& state,
                           const ControllerConfig& cfg) {
  ControlOutput out;
  const Eigen::Vector3d tip = input.pusher_pose.translation();
  const Eigen::Vector3d target = input.target_pose.translation();
  out.r_tip = std::hypot(target.y() - tip.y(), target.z() - tip.z());
  if (out.r_tip < cfg.termination_radius) {
    out.status = ControlStatus::kTargetReached;
    return out;
  }
  ++state.tap_count;

  const PosePrediction& pred = input.prediction;
  if (!pred.in_contact) {
    // Hold the PID memory and creep toward where the surface was last felt.
    ++state.missed_contacts;
    if (state.missed_contacts > cfg.reacquire_taps) {
      out.status = ControlStatus::kLostContact;
      return out;
    }
    const double a = deg_to_rad(state.last_alpha.value_or(0.0));
    const Eigen::Vector3d dir(0, std::sin(a), std::cos(a));
    out.command = input.pusher_pose *
                  Transformd::Translation(cfg.reacquire_advance * dir);
    out.trace.reacquiring = true;
    out.trace.integral6 = state.integral6;
    out.trace.alignment_engaged = state.alignment_engaged;
    return out;
  }
  state.missed_contacts = 0;
  state.last_alpha = pred.alpha;

  const Transformd ref = euler_to_transform(cfg.ref_pose);
  out.trace.servo_error = servo_error(prediction_to_pose(pred), ref);
  out.trace.servo_correction = pid6_step(state, out.trace.servo_error, cfg);
  out.trace.integral6 = state.integral6;
  const Transformd u_servo = euler_to_transform(out.trace.servo_correction);

  const Bearing b =
      target_bearing(u_servo, input.pusher_pose, input.target_pose);
  out.trace.theta = b.theta;
  out.trace.r = b.r;
  state.alignment_engaged = b.r > cfg.approach_zone_radius;
  out.trace.alignment_engaged = state.alignment_engaged;
  out.trace.v = alignment_pid_step(state, b.theta, cfg, state.alignment_engaged);

  out.command = compose_command(u_servo, out.trace.v, input.pusher_pose);
  return out;
}

}  // namespace tacpush
