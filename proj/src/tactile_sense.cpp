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

#include "tacpush/tactile_sense.hpp"

#include <algorithm>
#include <stdexcept>

namespace tacpush {

namespace {

double clamp_flagged(double v, double lo, double hi, bool& clamped) {
  if (v < lo || v > hi) clamped = true;
  return std::clamp(v, lo, hi);
}

void clamp_prediction(PosePrediction& p, const SensingRange& range) {
  p.z_depth = clamp_flagged(*p.z_depth, range.z_min, range.z_max, p.clamped);
  p.alpha = clamp_flagged(*p.alpha, -range.angle_max, range.angle_max,
                          p.clamped);
  p.beta = clamp_flagged(*p.beta, -range.angle_max, range.angle_max,
                         p.clamped);
}

}  // namespace

PosePrediction sense_contact(const WorldState& world, const ObjectShape& shape,
                             const PusherTip& tip, const SensingRange& range) {
  const PlanarPose sensor = transform_to_planar(world.pusher_pose);
  const BoundaryPoint bp =
      closest_boundary_point(shape, world.object_pose, sensor.position());
  const double depth = tip.radius - bp.signed_distance;

  PosePrediction p;
  if (!(depth > 0)) return p;

  p.in_contact = true;
  const double normal_heading = heading_of(-bp.outward_normal);
  p.z_depth = depth;
  p.alpha = normalize_angle_deg(sensor.alpha - normal_heading);
  p.beta = 0.0;
  clamp_prediction(p, range);
  return p;
}

PosePrediction apply_noise(const PosePrediction& pred, const NoiseModel& noise,
                           Rng& rng, const SensingRange& range) {
  if (!noise.enabled || !pred.in_contact) return pred;
  std::normal_distribution<double> unit(0.0, 1.0);
  const double nz = unit(rng);
  const double na = unit(rng);
  const double nb = unit(rng);

  PosePrediction p = pred;
  p.z_depth = *p.z_depth + noise.sigma_z * nz;
  p.alpha = *p.alpha + noise.sigma_alpha * na;
  p.beta = *p.beta + noise.sigma_beta * nb;
  clamp_prediction(p, range);
  return p;
}

Transformd prediction_to_pose(const PosePrediction& pred) {
  if (!pred.in_contact) {
    throw std::logic_error("prediction_to_pose: no contact");
  }
  return euler_to_transform(
      EulerPosed{0, 0, *pred.z_depth, *pred.alpha, *pred.beta, 0});
}

}  // namespace tacpush
