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

// pushsim: command-line front end for the simulator and experiment grids.

#include <cstdio>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "tacpush/experiments.hpp"
#include "tacpush/export.hpp"

namespace {

using namespace tacpush;

void print_metrics(const std::string& label, const Metrics& m) {
  std::printf(
      "%s: %d/%d reached (%.1f%%), y_targ %.3f +/- %.3f mm, taps "
      "min %d median %.1f max %d, lost %d, max_taps %d, faults %d\n",
      label.c_str(), m.reached, m.trials, 100 * m.success_rate, m.mean_y_targ,
      m.std_y_targ, m.taps_min, m.taps_median, m.taps_max, m.lost_contact,
      m.max_taps, m.physics_fault);
}

void finish(const std::string& label, const ExperimentResult& res,
            const std::string& out) {
  write_outputs(out, res.records, res.metrics);
  print_metrics(label, res.metrics);
  std::printf("wrote %s/{records.json,taps.csv,metrics.json,trajectories.svg}\n",
              out.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tactile pushing simulator"};
  app.require_subcommand(1);

  int trials = 0;  // 0: subcommand default
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string noise;  // empty: keep the scenario's setting
  std::string out = "out";
  std::string scenario_path;
  std::string records_path;
  int every = 5;
  int workers = 1;

  auto add_common = [&](CLI::App* sub, int default_trials) {
    sub->add_option("--trials", trials,
                    "Trials per grid cell (default " +
                        std::to_string(default_trials) + ")")
        ->check(CLI::PositiveNumber);
    sub->add_option_function<std::uint64_t>(
        "--seed",
        [&](const std::uint64_t& s) {
          seed = s;
          seed_given = true;
        },
        "Master seed");
    sub->add_option("--out", out, "Output directory")->default_val("out");
    sub->add_option("--workers", workers, "Worker threads")
        ->default_val(1)
        ->check(CLI::Range(1, 256));
  };

  auto* run = app.add_subcommand("run", "Run one scenario file");
  run->add_option("--scenario", scenario_path, "Scenario JSON")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--noise", noise, "Sensor noise (default: from file)")
      ->check(CLI::IsMember({"on", "off"}));
  add_common(run, 1);

  auto* exp1 = app.add_subcommand("exp1", "Offset grid on the blue square");
  add_common(exp1, 10);
  auto* exp2 = app.add_subcommand("exp2", "Convex shapes from three starts");
  add_common(exp2, 10);
  auto* exp3 = app.add_subcommand("exp3", "Irregular shapes, random headings");
  add_common(exp3, 10);
  auto* robust =
      app.add_subcommand("robust", "Offset grid with perturbed friction");
  add_common(robust, 3);

  auto* plot = app.add_subcommand("plot", "Render records.json as SVG");
  plot->add_option("--records", records_path, "records.json")
      ->required()
      ->check(CLI::ExistingFile);
  plot->add_option("--out", out, "SVG path")->required();
  plot->add_option("--every", every, "Outline interval in taps")
      ->default_val(5)
      ->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("--scenario", scenario_path, "Scenario JSON")
      ->required()
      ->check(CLI::ExistingFile);

  auto* shapes = app.add_subcommand("shapes", "Print the shape catalog");

  CLI11_PARSE(app, argc, argv);

  try {
    if (trials == 0) trials = *run ? 1 : *robust ? 3 : 10;
    ExperimentOptions opts;
    opts.trials_per_cell = trials;
    opts.master_seed = seed;
    opts.workers = workers;

    if (*run) {
      const Scenario base = load_scenario(scenario_path);
      if (!seed_given) opts.master_seed = base.rng_seed;
      std::vector<GridTrial> grid;
      for (int t = 0; t < trials; ++t) {
        Scenario s = base;
        if (!noise.empty()) s.noise.enabled = noise == "on";
        s.rng_seed = trial_seed(opts.master_seed, 0, t);
        grid.push_back({std::move(s), 0, t});
      }
      finish(base.name, run_grid(grid, workers), out);
    } else if (*exp1) {
      finish("exp1", run_experiment_1(experiment_1_base(), opts), out);
    } else if (*exp2) {
      const auto& s = start_poses();
      finish("exp2",
             run_experiment_2(exp2_shapes(), {s.begin(), s.end()}, opts), out);
    } else if (*exp3) {
      finish("exp3", run_experiment_3(exp3_shapes(), opts), out);
    } else if (*robust) {
      finish("robust",
             run_grid(robustness_scenarios(experiment_1_base(), opts), workers),
             out);
    } else if (*plot) {
      const auto records = records_from_json(
          nlohmann::json::parse(read_text_file(records_path)));
      write_text_file(out, render_svg(records, every));
      std::printf("wrote %s\n", out.c_str());
    } else if (*validate) {
      const Scenario s = load_scenario(scenario_path);
      std::printf("ok: %s (%s, %d max taps)\n", s.name.c_str(),
                  s.object.name.c_str(), s.max_taps);
    } else if (*shapes) {
      std::cout << catalog_to_json().dump(2) << '\n';
    }
  } catch (const ScenarioError& e) {
    std::fprintf(stderr, "scenario error: %s\n", e.what());
    return 2;
  } catch (const InvariantViolation& e) {
    std::fprintf(stderr, "invalid scenario: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
