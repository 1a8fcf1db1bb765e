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

#include "tacpush/experiments.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace tacpush {

namespace {

double angle_of(const Vec2& v) { return rad_to_deg(std::atan2(v.y(), v.x())); }

Vec2 sensor_position(const EulerPosed& sensor) { return {sensor.y, sensor.z}; }

std::string fmt_int(double v) { return std::to_string(std::lround(v)); }

Scenario with_noise(Scenario s, const ExperimentOptions& opts, double extra) {
  s.noise.enabled = opts.noise;
  const double k = opts.noise_scale * extra;
  s.noise.sigma_z *= k;
  s.noise.sigma_alpha *= k;
  s.noise.sigma_beta *= k;
  return s;
}

Vec2 polygon_outward_normal(const Polygon& poly, std::size_t i) {
  const auto& v = poly.vertices;
  const Vec2 d = v[(i + 1) % v.size()] - v[i];
  return Vec2(d.y(), -d.x()).normalized();
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t cell,
                         std::uint64_t trial) {
  return splitmix64(splitmix64(splitmix64(master) + cell) + trial);
}

const std::array<EulerPosed, 3>& start_poses() {
  static const std::array<EulerPosed, 3> poses{
      EulerPosed{0, 0, 0, 0, 0, 0},
      EulerPosed{0, 0, 200, -150, 0, 0},
      EulerPosed{0, 200, 150, 45, 0, 0},
  };
  return poses;
}

std::vector<ObjectShape> exp2_shapes() {
  std::vector<ObjectShape> out;
  for (const char* n : {"blue_square", "red_square", "yellow_triangle", "circle",
                        "green_rectangle"}) {
    out.push_back(builtin_shape(n));
  }
  return out;
}

std::vector<ObjectShape> exp3_shapes() {
  std::vector<ObjectShape> out;
  for (const char* n :
       {"mustard_bottle", "spray_bottle", "mug", "soft_toy", "rubiks_cube"}) {
    out.push_back(builtin_shape(n));
  }
  return out;
}

PlanarPose place_face_contact(const ObjectShape& shape, const EulerPosed& sensor,
                              double lateral_offset, double angle_offset,
                              double gap) {
  const Vec2 p = sensor_position(sensor);
  const Vec2 axis = heading_axis(sensor.alpha);
  const double phi = normalize_angle_deg(sensor.alpha + angle_offset);
  const double standoff = PusherTip{}.radius + gap;
  if (shape.is_circle()) {
    const Vec2 centre = p + axis * (standoff + shape.circle().radius);
    return {centre.x(), centre.y(), phi};
  }
  const Polygon& poly = shape.polygon();
  std::size_t best = 0;
  double best_dot = -2;
  for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
    const double d = rotate_planar(polygon_outward_normal(poly, i), phi).dot(-axis);
    if (d > best_dot) {
      best_dot = d;
      best = i;
    }
  }
  const Vec2 a = poly.vertices[best];
  const Vec2 b = poly.vertices[(best + 1) % poly.vertices.size()];
  const Vec2 n = polygon_outward_normal(poly, best);
  // Edge runs a -> b; lateral_offset is measured along the sensor +y axis.
  Vec2 dir = (b - a).normalized();
  if (rotate_planar(dir, phi).dot(lateral_axis(sensor.alpha)) < 0) dir = -dir;
  const Vec2 foot = 0.5 * (a + b) + lateral_offset * dir;
  const Vec2 tip_local = foot + standoff * n;
  const Vec2 origin = p - rotate_planar(tip_local, phi);
  return {origin.x(), origin.y(), phi};
}

PlanarPose place_corner_centred(const ObjectShape& shape,
                                const EulerPosed& sensor, double gap) {
  if (shape.is_circle()) return place_face_contact(shape, sensor, 0, 0, gap);
  const Vec2 p = sensor_position(sensor);
  const Vec2 axis = heading_axis(sensor.alpha);
  const Polygon& poly = shape.polygon();
  const std::size_t n = poly.vertices.size();
  const Vec2 bisector = (polygon_outward_normal(poly, n - 1) +
                         polygon_outward_normal(poly, 0))
                            .normalized();
  const double phi = normalize_angle_deg(angle_of(-axis) - angle_of(bisector));
  const Vec2 vertex = p + axis * (PusherTip{}.radius + gap);
  const Vec2 origin = vertex - rotate_planar(poly.vertices[0], phi);
  return {origin.x(), origin.y(), phi};
}

PlanarPose place_on_axis(const ObjectShape& shape, const EulerPosed& sensor,
                         double object_heading, double gap) {
  const Vec2 p = sensor_position(sensor);
  const Vec2 axis = heading_axis(sensor.alpha);
  const double phi = normalize_angle_deg(object_heading);
  const double want = PusherTip{}.radius + gap;
  const Vec2 cof = rotate_planar(shape.cof_offset, phi);
  auto pose_at = [&](double d) {
    const Vec2 o = p + axis * d - cof;
    return PlanarPose{o.x(), o.y(), phi};
  };
  auto clearance = [&](double d) {
    return closest_boundary_point(shape, pose_at(d), p).signed_distance - want;
  };
  // Approach from far away so the first touch wins on non-convex outlines.
  double hi = 1000;
  if (clearance(hi) <= 0) throw std::invalid_argument("shape too large to place");
  double lo = hi;
  while (clearance(lo) > 0) {
    hi = lo;
    lo -= 1;
    if (lo < -1000) throw std::invalid_argument("placement failed");
  }
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (clearance(mid) > 0 ? hi : lo) = mid;
  }
  return pose_at(hi);
}

Scenario experiment_1_base() {
  Scenario s;
  s.name = "exp1";
  s.object = builtin_shape("blue_square");
  s.pusher_start_pose = start_poses()[0];
  s.object_start_pose = place_face_contact(s.object, s.pusher_start_pose, 0, 0);
  return s;
}

std::vector<GridTrial> experiment_1_scenarios(const Scenario& base,
                                             const ExperimentOptions& opts) {
  std::vector<GridTrial> out;
  int cell = 0;
  for (double s_off : kExp1SpatialOffsets) {
    for (double a_off : kExp1AngularOffsets) {
      for (int t = 0; t < opts.trials_per_cell; ++t) {
        Scenario s = with_noise(base, opts, 1);
        s.name = "exp1/s" + fmt_int(s_off) + "_a" + fmt_int(a_off);
        s.object_start_pose =
            place_face_contact(s.object, s.pusher_start_pose, s_off, a_off);
        s.rng_seed = trial_seed(opts.master_seed, cell, t);
        out.push_back({std::move(s), cell, t});
      }
      ++cell;
    }
  }
  return out;
}

std::vector<GridTrial> experiment_2_scenarios(
    const std::vector<ObjectShape>& shapes,
    const std::vector<EulerPosed>& starts, const ExperimentOptions& opts) {
  if (shapes.empty() || starts.empty()) {
    throw std::invalid_argument("experiment 2 needs shapes and start poses");
  }
  std::vector<GridTrial> out;
  int cell = 0;
  for (const auto& shape : shapes) {
    for (std::size_t k = 0; k < starts.size(); ++k) {
      for (int t = 0; t < opts.trials_per_cell; ++t) {
        Scenario s;
        s.name = "exp2/" + shape.name + "/start" + std::to_string(k + 1);
        s.object = shape;
        s.pusher_start_pose = starts[k];
        s.object_start_pose = place_corner_centred(shape, starts[k]);
        s.rng_seed = trial_seed(opts.master_seed, cell, t);
        out.push_back({with_noise(std::move(s), opts, 1), cell, t});
      }
      ++cell;
    }
  }
  return out;
}

std::vector<GridTrial> experiment_3_scenarios(
    const std::vector<ObjectShape>& shapes, const ExperimentOptions& opts) {
  if (shapes.empty()) throw std::invalid_argument("experiment 3 needs shapes");
  const EulerPosed start = start_poses()[1];
  std::vector<GridTrial> out;
  int cell = 0;
  for (const auto& shape : shapes) {
    for (int t = 0; t < opts.trials_per_cell; ++t) {
      Scenario s;
      s.name = "exp3/" + shape.name;
      s.object = shape;
      s.pusher_start_pose = start;
      s.rng_seed = trial_seed(opts.master_seed, cell, t);
      std::mt19937_64 rng(splitmix64(s.rng_seed));
      const double heading =
          std::uniform_real_distribution<double>(-180, 180)(rng);
      s.object_start_pose = place_on_axis(shape, start, heading);
      out.push_back({with_noise(std::move(s), opts, 1), cell, t});
    }
    ++cell;
  }
  return out;
}

std::vector<GridTrial> robustness_scenarios(const Scenario& base,
                                           const ExperimentOptions& opts) {
  std::vector<GridTrial> out = experiment_1_scenarios(base, opts);
  for (auto& g : out) {
    const int corner = (g.cell * opts.trials_per_cell + g.trial) % 8;
    ObjectShape& o = g.scenario.object;
    o.f_max *= (corner & 1) ? 1.5 : 0.5;
    o.m_max *= (corner & 2) ? 1.5 : 0.5;
    o.mu_contact *= (corner & 4) ? 1.5 : 0.5;
    g.scenario.name = "robust" + g.scenario.name.substr(4);
    g.scenario.noise.sigma_z *= 2;
    g.scenario.noise.sigma_alpha *= 2;
    g.scenario.noise.sigma_beta *= 2;
  }
  return out;
}

ExperimentResult run_grid(const std::vector<GridTrial>& grid, int workers) {
  std::vector<Scenario> scenarios;
  scenarios.reserve(grid.size());
  for (const auto& g : grid) scenarios.push_back(g.scenario);
  ExperimentResult res;
  res.records = run_batch(scenarios, workers);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    res.records[i].cell = grid[i].cell;
    res.records[i].trial = grid[i].trial;
  }
  res.metrics = compute_metrics(res.records);
  return res;
}

ExperimentResult run_experiment_1(const Scenario& base,
                                  const ExperimentOptions& opts) {
  return run_grid(experiment_1_scenarios(base, opts), opts.workers);
}

ExperimentResult run_experiment_2(const std::vector<ObjectShape>& shapes,
                                  const std::vector<EulerPosed>& starts,
                                  const ExperimentOptions& opts) {
  return run_grid(experiment_2_scenarios(shapes, starts, opts), opts.workers);
}

ExperimentResult run_experiment_3(const std::vector<ObjectShape>& shapes,
                                  const ExperimentOptions& opts) {
  return run_grid(experiment_3_scenarios(shapes, opts), opts.workers);
}

}  // namespace tacpush
