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

// Closed-loop simulation wiring the drive, the perceptual delay, the two
// responses, the camera controller and the event detector.

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "antsync/config.hpp"
#include "antsync/dynsys.hpp"
#include "antsync/scenario.hpp"
#include "antsync/segment.hpp"
#include "antsync/sync.hpp"

namespace antsync {

/// Everything observable at one step. All signals are sampled at time t,
/// before the step's updates; theta is the drive parameter in force during
/// the step and u is the camera acceleration commanded at t.
struct TraceRecord {
  double t = 0.0;
  Vec4 x;
  Vec4 x_tau;
  Vec4 y_star;
  Vec4 y;
  Vec2 alpha;
  Vec2 theta;
  Vec2 u;
  double V = 0.0;
  double b_V = 0.0;
  bool event = false;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

/// Starting point of a run. The ball always starts at rest at the origin.
/// Offsets are added to x(0) to get the initial response states.
struct InitialConditions {
  Vec2 camera_position;
  Vec2 camera_velocity;
  std::optional<Vec2> alpha;  // zero when absent
  Vec4 adaptive_offset;
  Vec4 anticipating_offset;
};

struct SimResult {
  SimConfig config;
  std::vector<TraceRecord> trace;
  std::vector<EventBoundary> events;
  std::vector<Vec2> ball_position;  // world v at each record's t
  std::vector<double> slope_changes;  // analytic boundary crossing times
};

namespace detail {

// Structural checks for library callers. Looser than ValidateConfig:
// duration may be zero and gamma may be zero (frozen adaptation).
inline void ValidateForRun(const SimConfig& c) {
  if (!(c.T > 0.0)) throw ConfigError("T", "must be > 0");
  if (!(c.gamma >= 0.0)) throw ConfigError("gamma", "must be >= 0");
  if (!(c.k >= 0.0)) throw ConfigError("k", "must be >= 0");
  if (!(c.kp > 0.0)) throw ConfigError("kp", "must be > 0");
  if (!(c.kd > 0.0)) throw ConfigError("kd", "must be > 0");
  if (!(c.g > 0.0)) throw ConfigError("g", "must be > 0");
  if (c.segments.empty()) throw ConfigError("segments", "at least one segment is required");
  const auto check = [&](double s, const char* key) {
    try {
      return SamplesFor(s, c.T, key);
    } catch (const std::invalid_argument&) {
      throw ConfigError(key, "must be a non-negative integer multiple of T");
    }
  };
  check(c.duration, "duration");
  check(c.tau, "tau");
  if (check(c.window, "window") < 1) throw ConfigError("window", "must span at least one sample");
}

}  // namespace detail

/// Runs the closed loop for duration/T steps. Per step:
///   1. camera command from y (full) or y* (no-anticipation)
///   2. u through the actuation delay line -> u_tau
///   3. current image state through the perception delay line -> x_tau
///   4. adaptive response on (x_tau, u_tau) -> e, V, alpha
///   5. detector on V
///   6. anticipating response on (x_tau, u, alpha)
///   7. drive advanced with the camera command
/// Throws NumericalError (with step index and signal) on divergence.
inline SimResult RunSimulation(const SimConfig& cfg, const InitialConditions& init = {}) {
  detail::ValidateForRun(cfg);
  const long steps = cfg.Steps();
  const auto delay = static_cast<std::size_t>(cfg.DelaySamples());
  const ControllerGains gains{cfg.kp, cfg.kd};
  const BallImageModel model;

  ScenarioState start;
  start.c = init.camera_position;
  start.c_dot = init.camera_velocity;
  Scenario drive(cfg.segments, cfg.g, start);

  const Vec4 x0 = drive.Image();
  AdaptiveResponse<BallImageModel> adaptive(model, x0 + init.adaptive_offset,
                                            init.alpha.value_or(Vec2{}), cfg.gamma);
  AnticipatingResponse<BallImageModel> anticipating(model, x0 + init.anticipating_offset, cfg.k,
                                                    delay);
  EventDetector detector(static_cast<std::size_t>(cfg.WindowSamples()),
                         DetectorConfig{cfg.b_event, cfg.refractory, cfg.sigma_floor});

  auto command = [&] {
    const Vec4& fed = cfg.preset == Preset::kFull ? anticipating.state() : adaptive.state();
    return PdController(fed, adaptive.alpha(), gains);
  };
  DelayLine<Vec4> u_line(delay, ActuationFromCamera(command()));
  DelayLine<Vec4> x_line(delay, x0);

  SimResult result;
  result.config = cfg;
  result.slope_changes = SlopeChangeTimes(cfg.segments, cfg.g);
  result.trace.reserve(static_cast<std::size_t>(steps));
  result.ball_position.reserve(static_cast<std::size_t>(steps));

  for (long k = 0; k < steps; ++k) {
    const char* stage = "camera command";
    try {
      TraceRecord rec;
      rec.t = static_cast<double>(k) * cfg.T;
      rec.x = drive.Image();
      rec.y_star = adaptive.state();
      rec.y = anticipating.state();
      rec.alpha = adaptive.alpha();

      rec.u = command();
      RequireFinite(rec.u, "camera command");
      const Vec4 u = ActuationFromCamera(rec.u);
      const Vec4 u_tau = u_line.Push(u);
      rec.x_tau = x_line.Push(rec.x);

      stage = "y_star";
      const auto err = adaptive.Step(rec.x_tau, u_tau, cfg.T);
      rec.V = err.V;

      stage = "V";
      const auto sample = detector.Push(err.V, rec.t);
      rec.b_V = sample.b;
      rec.event = sample.event.has_value();

      stage = "y";
      anticipating.Step(rec.x_tau, u, rec.alpha, cfg.T);

      stage = "x";
      result.ball_position.push_back(drive.state().v);
      const auto step = drive.Step(rec.u, cfg.T);
      RequireBounded(step.x, "drive image state");
      rec.theta = step.theta;

      result.trace.push_back(rec);
    } catch (const NumericalError& e) {
      throw e.WithContext(k, stage);
    } catch (const std::invalid_argument& e) {
      throw NumericalError(e.what(), k, stage);
    }
  }
  result.events = detector.events();
  return result;
}

}  // namespace antsync
