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

// Two-loop push controller.
//
// Frames: B work/base frame, S sensor, F contact feature, T target,
// S' reference sensor pose, S'' servo-corrected sensor pose, S''' servo plus
// alignment corrected pose. Pose vectors are (x, y, z, alpha, beta, gamma)
// in mm and degrees. One control tick is one tap.
//
//   error      S_E_S'   = inv(F_P_S) * F_P_S'
//   servo      S_u_S''  = Kp e + Ki clip(sum e) + Kd (e - e_prev)
//   bearing    S''_P_T  = inv(S_U_S'') * inv(B_P_S) * B_P_T,
//              theta    = atan2(y, z)
//   alignment  v        = clip(kp eps + ki sum eps + kd (eps - eps_prev)),
//              eps      = theta_ref - theta
//   command    B_U_S''' = B_P_S * S_U_S'' * e2t(0, v, 0, 0, 0, 0)

#ifndef TACPUSH_PUSH_CONTROLLER_HPP_
#define TACPUSH_PUSH_CONTROLLER_HPP_

#include <optional>

#include <Eigen/Core>

#include "tacpush/pose_math.hpp"
#include "tacpush/tactile_sense.hpp"

namespace tacpush {

using Gain6 = Eigen::DiagonalMatrix<double, 6>;

struct Range {
  double lo;
  double hi;

  double clip(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
  bool contains(double v) const { return v >= lo && v <= hi; }
};

struct ControllerConfig {
  EulerPosed ref_pose{0, 0, 2, 0, 0, 0};
  Gain6 Kp{Vector6d(0, 0, 0.9, 0.9, 0.9, 0)};
  Gain6 Ki{Vector6d(0, 0, 0.1, 0.1, 0.1, 0)};
  Gain6 Kd{Vector6d::Zero()};
  Range integral_clip_translation{-5, 5};  // mm
  Range integral_clip_rotation{-25, 25};   // degrees
  double kp = 0.2;
  double ki = 0;
  double kd = 0.5;
  Range alignment_output_clip{-5, 5};  // mm
  double theta_ref = 0;                // degrees
  double approach_zone_radius = 60;    // mm
  double termination_radius = 20;      // mm
  double tap_forward = 10;             // mm
  double tap_back = 5;                 // mm
  int reacquire_taps = 5;
  double reacquire_advance = 2;        // mm

  /// Throws InvariantViolation.
  void validate() const;
};

struct ControllerState {
  Vector6d integral6 = Vector6d::Zero();
  Vector6d prev_error6 = Vector6d::Zero();
  double integral_theta = 0;
  double prev_epsilon = 0;
  bool alignment_engaged = false;
  int tap_count = 0;
  // Contact recovery.
  int missed_contacts = 0;
  std::optional<double> last_alpha;
};

enum class ControlStatus { kContinue, kTargetReached, kLostContact };

const char* to_string(ControlStatus status);

/// S_e_S': full SE(3) error between predicted and reference sensor poses.
EulerPosed servo_error(const Transformd& pred_pose, const Transformd& ref_pose);

/// Vector PID with per-channel integral clipping; dt is one tick.
EulerPosed pid6_step(ControllerState& state, const EulerPosed& error,
                     const ControllerConfig& cfg);

struct Bearing {
  double theta;  // degrees
  double r;      // mm, in-plane distance
};

Bearing target_bearing(const Transformd& u_correction,
                       const Transformd& pusher_pose,
                       const Transformd& target_pose);

/// Scalar alignment PID. When `engaged` is false the output is zero and the
/// PID memory is left untouched.
double alignment_pid_step(ControllerState& state, double theta,
                          const ControllerConfig& cfg, bool engaged = true);

Transformd compose_command(const Transformd& u_servo, double v,
                           const Transformd& pusher_pose);

struct ControlInput {
  PosePrediction prediction;
  Transformd pusher_pose;  // B_P_S
  Transformd target_pose;  // B_P_T
};

/// Intermediate signals of one control tick, for logging.
struct ControlTrace {
  EulerPosed servo_error;
  EulerPosed servo_correction;
  Vector6d integral6 = Vector6d::Zero();  // after this tick's update
  double theta = 0;
  double r = 0;
  double v = 0;
  bool alignment_engaged = false;
  bool reacquiring = false;
};

struct ControlOutput {
  ControlStatus status = ControlStatus::kContinue;
  std::optional<Transformd> command;  // absent once the trial is over
  ControlTrace trace;
  double r_tip = 0;  // tip centre to target, mm
};

ControlOutput control_step(const ControlInput& input, ControllerState& state,
                           const ControllerConfig& cfg);

}  // namespace tacpush

#endif  // TACPUSH_PUSH_CONTROLLER_HPP_
