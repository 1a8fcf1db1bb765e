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

#ifndef TACPUSH_SCENARIO_HPP_
#define TACPUSH_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "tacpush/push_controller.hpp"
#include "tacpush/scene.hpp"
#include "tacpush/tactile_sense.hpp"

namespace tacpush {

/// One pushing trial, fully specified.
struct Scenario {
  std::string name = "scenario";
  ObjectShape object;
  PlanarPose object_start_pose;
  EulerPosed pusher_start_pose;
  EulerPosed target_pose{0, 200, 400, 0, 0, 0};
  ControllerConfig controller;
  NoiseModel noise;
  PusherTip tip;
  std::uint64_t rng_seed = 0;
  int max_taps = 300;

  /// Throws InvariantViolation.
  void validate() const;
};

/// Malformed scenario file. `field()` is the JSON path of the offending
/// entry, or empty for whole-document errors.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Parses and validates. Missing optional fields take the library defaults.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::json scenario_to_json(const Scenario& scenario);
nlohmann::json shape_to_json(const ObjectShape& shape);

/// Reads a shape written by shape_to_json (explicit outline and friction).
ObjectShape shape_from_json(const nlohmann::json& doc);

/// The whole built-in catalog.
nlohmann::json catalog_to_json();

}  // namespace tacpush

#endif  // TACPUSH_SCENARIO_HPP_
