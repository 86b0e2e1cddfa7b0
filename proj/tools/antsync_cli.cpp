// Copyright 2026 The antsync Authors
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

// antsync simulate --config PATH --preset full|no-anticipation --out DIR [--no-plots]

#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "antsync/antsync.hpp"

namespace {

int Simulate(const std::string& config_path, const std::optional<std::string>& preset,
             const std::filesystem::path& outdir, bool plots) {
  antsync::SimConfig cfg =
      config_path.empty() ? antsync::SimConfig{} : antsync::LoadConfig(config_path);
  if (preset) cfg.preset = antsync::ParsePreset(*preset);

  std::filesystem::create_directories(outdir);
  const antsync::SimResult run = antsync::RunSimulation(cfg);
  antsync::WriteTrace(run.trace, (outdir / "trace.csv").string());
  antsync::WriteEvents(run.events, (outdir / "events.csv").string());
  antsync::WriteGroundTruth(run.slope_changes, (outdir / "ground_truth.csv").string());

  std::cout << "preset " << antsync::PresetName(cfg.preset) << ": " << run.trace.size()
            << " steps, " << run.events.size() << " event(s)\n";
  for (const auto& e : run.events) {
    std::cout << "  boundary at t=" << e.time << " s (b_V=" << e.b_value << ")\n";
  }

  if (plots) {
    antsync::SimConfig other_cfg = cfg;
    other_cfg.preset = cfg.preset == antsync::Preset::kFull ? antsync::Preset::kNoAnticipation
                                                            : antsync::Preset::kFull;
    std::optional<antsync::SimResult> other;
    try {
      other = antsync::RunSimulation(other_cfg);
    } catch (const antsync::NumericalError& e) {
      std::cerr << "warning: comparison run (" << antsync::PresetName(other_cfg.preset)
                << ") failed: " << e.what() << '\n';
    }
    const auto files = antsync::EmitPlots(run, other ? &*other : nullptr, outdir);
    std::cout << files.size() << " figure(s) written to " << outdir.string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive anticipating synchronization: event segmentation simulator"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "Run the ball-on-ramps closed loop");
  std::string config_path;
  std::optional<std::string> preset;
  std::string outdir = ".";
  bool no_plots = false;
  sim->add_option("--config", config_path, "key=value configuration file")
      ->check(CLI::ExistingFile);
  sim->add_option("--preset", preset, "full | no-anticipation (overrides the config)")
      ->check(CLI::IsMember({"full", "no-anticipation"}));
  sim->add_option("--out", outdir, "output directory")->required();
  sim->add_flag("--no-plots", no_plots, "skip SVG figures");

  CLI11_PARSE(app, argc, argv);

  try {
    return Simulate(config_path, preset, outdir, !no_plots);
  } catch (const antsync::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
  } catch (const antsync::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 1;
}
