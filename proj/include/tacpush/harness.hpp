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

#ifndef TACPUSH_HARNESS_HPP_
#define TACPUSH_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tacpush/push_controller.hpp"
#include "tacpush/push_dynamics.hpp"
#include "tacpush/scenario.hpp"
#include "tacpush/tactile_sense.hpp"

namespace tacpush {

enum class Outcome { kReached, kLostContact, kMaxTaps, kPhysicsFault };

const char* to_string(Outcome outcome);

/// One tap: where the robot came to rest after it (the pose the controller
/// reads), the object pose at that moment, what the sensor felt at the end of
/// the forward stroke, and what the controller did about it.
struct TapLog {
  int tap = 0;
  EulerPosed pusher;
  PlanarPose object;
  PosePrediction prediction;
  std::optional<ControlTrace> control;  // absent on the terminating tap
  ControlStatus status = ControlStatus::kContinue;
  double r_tip = 0;
};

struct TrialRecord {
  std::string scenario_id;
  int cell = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  ObjectShape shape;
  EulerPosed target;
  std::vector<TapLog> log;
  Outcome outcome = Outcome::kMaxTaps;
  std::optional<double> y_targ;  // mm, only when reached
  int tap_total = 0;
  double wall_time_ms = 0;
  std::string diagnostic;
};

/// Perpendicular in-plane distance from the sensor's central-axis line
/// (through the tip centre) to the target point.
double compute_y_targ(const Transformd& final_pusher_pose,
                      const Transformd& target_pose);

/// Runs taps until the target is reached, contact is lost, a physics fault
/// occurs or max_taps is spent. Deterministic in (scenario, seed). The
/// pusher first taps at its start pose; every later tap executes the
/// controller command computed from the previous one. Contact is sensed at
/// the end of the forward stroke; the controller reads the resting pose
/// after the retraction. Throws InvariantViolation for an invalid scenario.
TrialRecord run_trial(const Scenario& scenario);

struct Metrics {
  int trials = 0;
  int reached = 0;
  double success_rate = 0;
  double mean_y_targ = 0;  // over reached trials
  double std_y_targ = 0;   // sample standard deviation
  int taps_min = 0;
  int taps_max = 0;
  double taps_mean = 0;
  double taps_median = 0;
  int lost_contact = 0;
  int max_taps = 0;
  int physics_fault = 0;
};

Metrics compute_metrics(const std::vector<TrialRecord>& records);

/// Runs scenarios on `workers` threads. Results are indexed like the input,
/// so scheduling cannot change them.
std::vector<TrialRecord> run_batch(const std::vector<Scenario>& scenarios,
                                   int workers = 1);

}  // namespace tacpush

#endif  // TACPUSH_HARNESS_HPP_
