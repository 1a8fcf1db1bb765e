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

// Geometric stand-in for the learned tactile pose model. It reports the
// sensor pose relative to the local contact frame F: z is the contact depth,
// alpha the in-plane angle of the sensor axis from the inward contact
// normal, beta the out-of-plane tilt (zero on a flat support). x, y and
// gamma are never predicted.

#ifndef TACPUSH_TACTILE_SENSE_HPP_
#define TACPUSH_TACTILE_SENSE_HPP_

#include <optional>
#include <random>

#include "tacpush/pose_math.hpp"
#include "tacpush/scene.hpp"

namespace tacpush {

/// Range the pose model was calibrated over.
struct SensingRange {
  double z_min = 1;       // mm
  double z_max = 5;       // mm
  double angle_max = 20;  // degrees, symmetric
};

struct PosePrediction {
  bool in_contact = false;
  bool clamped = false;
  // Present only in contact.
  std::optional<double> z_depth;  // mm
  std::optional<double> alpha;    // degrees
  std::optional<double> beta;     // degrees

  // Never predicted; kept so the full 6-vector is explicit.
  static constexpr double x = 0;
  static constexpr double y = 0;
  static constexpr double gamma = 0;
};

struct NoiseModel {
  double sigma_z = 0.1;        // mm
  double sigma_alpha = 0.39;   // degrees
  double sigma_beta = 0.34;    // degrees
  bool enabled = true;
};

using Rng = std::mt19937_64;

/// Exact contact geometry, range-clamped. alpha is positive when the sensor
/// axis is rotated about +x relative to the inward normal.
PosePrediction sense_contact(const WorldState& world, const ObjectShape& shape,
                             const PusherTip& tip = {},
                             const SensingRange& range = {});

/// Adds independent zero-mean Gaussian noise and re-clamps. Always draws
/// three samples so the stream position does not depend on the values.
PosePrediction apply_noise(const PosePrediction& pred, const NoiseModel& noise,
                           Rng& rng, const SensingRange& range = {});

/// F_P_S: the sensor pose in the contact frame. Throws std::logic_error when
/// there is no contact.
Transformd prediction_to_pose(const PosePrediction& pred);

}  // namespace tacpush

#endif  // TACPUSH_TACTILE_SENSE_HPP_
