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

// Trial artifacts: per-tap CSV, full-record JSON, metrics JSON and an SVG
// overlay of object outlines and sensor paths.
//
// CSV columns, after the "# tacpush taps csv v1" comment line:
//   scenario_id, cell, trial, seed, tap, status,
//   x, y, z, alpha, beta, gamma          sensor resting pose after the tap
//   obj_y, obj_z, obj_alpha              object pose (mm, deg)
//   in_contact, clamped, pred_z, pred_alpha, pred_beta
//   err_x .. err_gamma                   servo error
//   theta, r, v, alignment_engaged       alignment loop
//   r_tip, target_y, target_z
// Numbers are printed with 17 significant digits. Fields without a value
// (no contact, terminating tap) are empty.

#ifndef TACPUSH_EXPORT_HPP_
#define TACPUSH_EXPORT_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tacpush/harness.hpp"

namespace tacpush {

class ExportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kCsvVersionLine = "# tacpush taps csv v1";

void write_taps_csv(std::ostream& os, const std::vector<TrialRecord>& records);

struct CsvTapRow {
  std::string scenario_id;
  int cell = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  int tap = 0;
  std::string status;
  EulerPosed pusher;
  PlanarPose object;
  bool in_contact = false;
  bool clamped = false;
  std::optional<double> pred_z, pred_alpha, pred_beta;
  std::optional<EulerPosed> servo_error;
  std::optional<double> theta, r, v;
  std::optional<bool> alignment_engaged;
  double r_tip = 0;
  double target_y = 0;
  double target_z = 0;
};

/// Throws ExportError on a bad header or malformed row.
std::vector<CsvTapRow> read_taps_csv(std::istream& is);

nlohmann::json records_to_json(const std::vector<TrialRecord>& records);
std::vector<TrialRecord> records_from_json(const nlohmann::json& doc);
nlohmann::json metrics_to_json(const Metrics& metrics);

/// Object outline every `every` taps (plus the last), sensor path and a
/// target circle of `target_radius` mm. Throws ExportError on no records.
std::string render_svg(const std::vector<TrialRecord>& records, int every = 5,
                       double target_radius = 20);

/// Writes records.json, taps.csv, metrics.json and trajectories.svg into
/// `dir`, creating it if needed. Checks inputs before touching the disk.
void write_outputs(const std::filesystem::path& dir,
                   const std::vector<TrialRecord>& records,
                   const Metrics& metrics);

/// Reads a file into a string; ExportError names the path on failure.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace tacpush

#endif  // TACPUSH_EXPORT_HPP_
