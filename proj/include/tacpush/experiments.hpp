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

// Experiment grids. Each grid expands to a flat list of scenarios keyed by
// (cell, trial); per-trial seeds are a pure function of the master seed and
// those indices, so results do not depend on how trials are scheduled.

#ifndef TACPUSH_EXPERIMENTS_HPP_
#define TACPUSH_EXPERIMENTS_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "tacpush/harness.hpp"

namespace tacpush {

/// splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// seed = sm(sm(sm(master) + cell) + trial), sm = splitmix64.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t cell,
                         std::uint64_t trial);

inline constexpr std::array<double, 7> kExp1SpatialOffsets{-30, -20, -10, 0,
                                                            10,  20,  30};
inline constexpr std::array<double, 3> kExp1AngularOffsets{-20, 0, 20};

/// Sensor start poses 1-3 in the work frame.
const std::array<EulerPosed, 3>& start_poses();

/// Default shape sets.
std::vector<ObjectShape> exp2_shapes();
std::vector<ObjectShape> exp3_shapes();

/// Gap between tip and object at the start pose, mm.
inline constexpr double kStartGap = 0.5;

/// Object pose that puts the face nearest the sensor in contact, with the
/// contact foot `lateral_offset` mm along the face from its midpoint and the
/// face rotated by `angle_offset` degrees relative to the sensor.
PlanarPose place_face_contact(const ObjectShape& shape, const EulerPosed& sensor,
                              double lateral_offset, double angle_offset,
                              double gap = kStartGap);

/// Object pose with an external corner centred on the sensor axis and the
/// corner bisector pointing back at the sensor. Circles are placed straight
/// ahead.
PlanarPose place_corner_centred(const ObjectShape& shape,
                                const EulerPosed& sensor,
                                double gap = kStartGap);

/// Object pose with the CoF on the sensor axis, heading `object_heading`,
/// slid along the axis until the outline is `gap` away from the tip.
PlanarPose place_on_axis(const ObjectShape& shape, const EulerPosed& sensor,
                         double object_heading, double gap = kStartGap);

struct ExperimentOptions {
  int trials_per_cell = 10;
  std::uint64_t master_seed = 1;
  int workers = 1;
  bool noise = true;
  double noise_scale = 1;  // multiplies every sigma
};

/// A scenario tagged with its grid position.
struct GridTrial {
  Scenario scenario;
  int cell = 0;
  int trial = 0;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  Metrics metrics;
};

std::vector<GridTrial> experiment_1_scenarios(const Scenario& base,
                                             const ExperimentOptions& opts);
std::vector<GridTrial> experiment_2_scenarios(
    const std::vector<ObjectShape>& shapes,
    const std::vector<EulerPosed>& starts, const ExperimentOptions& opts);
std::vector<GridTrial> experiment_3_scenarios(
    const std::vector<ObjectShape>& shapes, const ExperimentOptions& opts);

/// Experiment 1 grid with support and contact friction scaled by 0.5 or 1.5.
/// Each trial takes one of the eight (f_max, m_max, mu) corners in turn.
/// Noise sigmas are doubled on top of opts.noise_scale.
std::vector<GridTrial> robustness_scenarios(const Scenario& base,
                                           const ExperimentOptions& opts);

/// Baseline Experiment 1 scenario (blue square at the first start pose).
Scenario experiment_1_base();

/// Runs scenarios and stamps cell and trial indices onto the records.
ExperimentResult run_grid(const std::vector<GridTrial>& grid,
                          int workers);

ExperimentResult run_experiment_1(const Scenario& base,
                                  const ExperimentOptions& opts);
ExperimentResult run_experiment_2(const std::vector<ObjectShape>& shapes,
                                  const std::vector<EulerPosed>& starts,
                                  const ExperimentOptions& opts);
ExperimentResult run_experiment_3(const std::vector<ObjectShape>& shapes,
                                  const ExperimentOptions& opts);

}  // namespace tacpush

#endif  // TACPUSH_EXPERIMENTS_HPP_
