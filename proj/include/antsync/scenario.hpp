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

// Ball rolling over a sequence of inclined planes, watched by a camera that
// translates parallel to the plane. The image state is
//   x = [xdot_1, xdot_2, x_1, x_2],   x = v - c  (orthographic projection),
// with v the ball and c the camera position.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "antsync/dynsys.hpp"

namespace antsync {

using Vec2 = Vec<2>;
using Vec4 = Vec<4>;

/// xdot = f(x) + F x theta + u with f(x) = [0, 0, xdot_1, xdot_2] and
/// F = [I_2; 0].
struct BallImageModel {
  static constexpr std::size_t kStateDim = 4;
  static constexpr std::size_t kParamDim = 2;

  Vec4 Drift(const Vec4& x) const { return Vec4{{0.0, 0.0, x[0], x[1]}}; }

  Mat<4, 2> Regressor(const Vec4& /*x*/) const {
    Mat<4, 2> F;
    F(0, 0) = 1.0;
    F(1, 1) = 1.0;
    return F;
  }
};

static_assert(ParametricModel<BallImageModel>);

struct RampSegment {
  double beta = 0.0;    // radians
  double length = 0.0;  // metres of horizontal progress, may be +inf
};

inline std::vector<RampSegment> DefaultRamps() {
  constexpr double kSteep = std::numbers::pi / 12.0;
  return {{kSteep, 500.0}, {0.0, 1000.0}, {kSteep, std::numeric_limits<double>::infinity()}};
}

/// Drive parameters for a slope: [-g sin b cos b, -g sin^2 b].
inline Vec2 ThetaForSlope(double beta, double g) {
  if (!(g > 0.0)) throw std::invalid_argument("gravity must be > 0");
  const double s = std::sin(beta);
  return Vec2{{-g * s * std::cos(beta), -g * s * s}};
}

/// u = [-cddot_1, -cddot_2, 0, 0].
inline Vec4 ActuationFromCamera(const Vec2& c_ddot) {
  return Vec4{{-c_ddot[0], -c_ddot[1], 0.0, 0.0}};
}

/// Index of the segment containing the horizontal progress
/// (v1 - start) * direction. Clamped to the first/last segment.
inline std::size_t SegmentIndex(double v1, std::span<const RampSegment> segments, double start,
                                double direction) {
  if (segments.empty()) throw std::invalid_argument("no ramp segments");
  const double progress = (v1 - start) * direction;
  double boundary = 0.0;
  for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
    boundary += segments[i].length;
    if (progress < boundary) return i;
  }
  return segments.size() - 1;
}

/// Image-state derivative [theta - cddot, xdot].
inline Vec4 DriveDeriv(const Vec4& x, const Vec2& theta, const Vec2& c_ddot) {
  return Vec4{{theta[0] - c_ddot[0], theta[1] - c_ddot[1], x[0], x[1]}};
}

struct ControllerGains {
  double kp = 1.0;
  double kd = 2.0;
};

/// Camera acceleration cddot = kp pos(y) + kd vel(y) + alpha.
inline Vec2 PdController(const Vec4& y, const Vec2& alpha, const ControllerGains& gains) {
  return Vec2{{gains.kp * y[2] + gains.kd * y[0] + alpha[0],
               gains.kp * y[3] + gains.kd * y[1] + alpha[1]}};
}

struct ScenarioState {
  Vec2 v;      // ball position, world frame
  Vec2 v_dot;  // ball velocity
  Vec2 c;      // camera position
  Vec2 c_dot;  // camera velocity
  std::size_t segment_idx = 0;

  Vec4 Image() const {
    return Vec4{{v_dot[0] - c_dot[0], v_dot[1] - c_dot[1], v[0] - c[0], v[1] - c[1]}};
  }
};

/// The drive. The ball's world motion ignores the camera; the camera is a
/// double integrator driven by cddot.
class Scenario {
 public:
  struct StepResult {
    Vec2 theta;  // parameters in force during the step
    Vec4 x;      // image state after the step
  };

  Scenario(std::vector<RampSegment> segments, double g, ScenarioState initial = {})
      : segments_(std::move(segments)), g_(g), state_(initial) {
    if (segments_.empty()) throw std::invalid_argument("no ramp segments");
    for (const auto& s : segments_) {
      if (!(s.length > 0.0)) throw std::invalid_argument("ramp segment length must be > 0");
    }
    if (!(g > 0.0)) throw std::invalid_argument("gravity must be > 0");
    start_ = state_.v[0];
    // The ball moves down the first slope; a level start has no preferred side.
    direction_ = ThetaForSlope(segments_.front().beta, g_)[0] < 0.0 ? -1.0 : 1.0;
    state_.segment_idx = SegmentIndex(state_.v[0], segments_, start_, direction_);
  }

  const ScenarioState& state() const noexcept { return state_; }
  const std::vector<RampSegment>& segments() const noexcept { return segments_; }
  double gravity() const noexcept { return g_; }
  double direction() const noexcept { return direction_; }
  double start() const noexcept { return start_; }

  Vec2 Theta() const { return ThetaForSlope(segments_[state_.segment_idx].beta, g_); }
  Vec4 Image() const { return state_.Image(); }

  StepResult Step(const Vec2& c_ddot, double step_size) {
    if (!(step_size > 0.0)) throw std::invalid_argument("step size must be positive");
    const Vec2 theta = Theta();
    ScenarioState next = state_;
    next.v = EulerStep(state_.v, state_.v_dot, step_size);
    next.v_dot = EulerStep(state_.v_dot, theta, step_size);
    next.c = EulerStep(state_.c, state_.c_dot, step_size);
    next.c_dot = EulerStep(state_.c_dot, c_ddot, step_size);
    next.segment_idx = SegmentIndex(next.v[0], segments_, start_, direction_);
    state_ = next;
    return {theta, state_.Image()};
  }

 private:
  std::vector<RampSegment> segments_;
  double g_;
  ScenarioState state_;
  double start_ = 0.0;
  double direction_ = 1.0;
};

/// Continuous-time instants at which a ball released at rest crosses each
/// segment boundary, from piecewise uniform-acceleration kinematics. Stops
/// at the first boundary the ball never reaches.
inline std::vector<double> SlopeChangeTimes(std::span<const RampSegment> segments, double g) {
  std::vector<double> times;
  if (segments.empty()) return times;
  const double direction = ThetaForSlope(segments.front().beta, g)[0] < 0.0 ? -1.0 : 1.0;
  double t = 0.0;
  double speed = 0.0;  // along the direction of travel
  for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
    const double accel = direction * ThetaForSlope(segments[i].beta, g)[0];
    const double length = segments[i].length;
    const double disc = speed * speed + 2.0 * accel * length;
    if (disc < 0.0) break;
    const double denom = speed + std::sqrt(disc);
    if (!(denom > 0.0)) break;
    const double dt = 2.0 * length / denom;
    t += dt;
    speed += accel * dt;
    times.push_back(t);
  }
  return times;
}

}  // namespace antsync
