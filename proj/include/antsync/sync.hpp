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

// The double-response system: an adaptive response that identifies the drive
// parameters while synchronizing with the delayed perception, and an
// anticipating response that uses those parameters plus delayed self-feedback
// to run ahead of it.

#pragma once

#include <cstddef>
#include <string>

#include "antsync/dynsys.hpp"

namespace antsync {

// States beyond this norm are treated as a blown-up simulation.
inline constexpr double kDivergenceLimit = 1e9;

template <std::size_t N>
void RequireBounded(const Vec<N>& x, const char* what) {
  RequireFinite(x, what);
  if (Norm(x) > kDivergenceLimit) throw NumericalError(std::string("divergent ") + what);
}

/// V(e) = 1/2 e^T e. Its gradient is e itself.
struct QuadraticLyapunov {
  template <std::size_t N>
  static double Value(const Vec<N>& e) {
    return 0.5 * Dot(e, e);
  }
  template <std::size_t N>
  static Vec<N> Gradient(const Vec<N>& e) {
    return e;
  }
};

template <std::size_t N>
double LyapunovV(const Vec<N>& e) {
  return QuadraticLyapunov::Value(e);
}

/// Synchronizing controller
///   U = -e + f(x) - f(y) + [F(x) - F(y)] alpha,   e = y - x.
/// U(y, y, .) is exactly zero.
template <ParametricModel Model>
ModelState<Model> ChenController(const Model& model, const ModelState<Model>& y_star,
                                 const ModelState<Model>& x_tau,
                                 const ModelParams<Model>& alpha) {
  const ModelState<Model> e = y_star - x_tau;
  ModelState<Model> u = (model.Drift(x_tau) - model.Drift(y_star)) - e;
  u += (model.Regressor(x_tau) - model.Regressor(y_star)) * alpha;
  RequireFinite(u, "controller output");
  return u;
}

/// Discretized gradient learning rule: alpha - gamma T F(x)^T grad V(e)^T.
template <ParametricModel Model, class Lyapunov = QuadraticLyapunov>
ModelParams<Model> LearningUpdate(const Model& model, const ModelParams<Model>& alpha,
                                  const ModelState<Model>& x_tau, const ModelState<Model>& e,
                                  double gamma, double step_size) {
  ModelParams<Model> next =
      alpha - (gamma * step_size) * model.Regressor(x_tau).TransposeTimes(Lyapunov::Gradient(e));
  RequireFinite(next, "parameter estimate");
  return next;
}

template <std::size_t N>
struct PredictionError {
  Vec<N> e;  // y* - x_tau
  double V = 0.0;
};

/// Response that synchronizes with the delayed drive x_tau (fed the delayed
/// actuation u_tau) and adapts alpha toward the drive parameters.
template <ParametricModel Model, class Lyapunov = QuadraticLyapunov>
class AdaptiveResponse {
 public:
  using State = ModelState<Model>;
  using Params = ModelParams<Model>;

  AdaptiveResponse(Model model, const State& initial, const Params& alpha, double gamma)
      : model_(std::move(model)), state_(initial), alpha_(alpha), gamma_(gamma) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("learning rate must be >= 0");
    RequireFinite(initial, "adaptive response initial state");
    RequireFinite(alpha, "initial parameter estimate");
  }

  const State& state() const noexcept { return state_; }
  const Params& alpha() const noexcept { return alpha_; }
  double gamma() const noexcept { return gamma_; }
  const Model& model() const noexcept { return model_; }

  // The error and V are taken before anything moves; y* is integrated with
  // the pre-update alpha.
  PredictionError<Model::kStateDim> Step(const State& x_tau, const State& u_tau,
                                         double step_size) {
    PredictionError<Model::kStateDim> err{state_ - x_tau, 0.0};
    err.V = Lyapunov::Value(err.e);
    const State dy = EvalParametric(model_, state_, alpha_, u_tau) +
                     ChenController(model_, state_, x_tau, alpha_);
    Params next_alpha =
        LearningUpdate<Model, Lyapunov>(model_, alpha_, x_tau, err.e, gamma_, step_size);
    State next = EulerStep(state_, dy, step_size);
    RequireBounded(next, "adaptive response state");
    state_ = next;
    alpha_ = next_alpha;
    return err;
  }

 private:
  Model model_;
  State state_;
  Params alpha_;
  double gamma_;
};

/// Response with delayed self-feedback,
///   ydot = f(y) + F(y) alpha + u + k (x_tau - y_tau),
/// whose synchronized state satisfies y_tau = x_tau, i.e. y tracks the
/// undelayed drive.
template <ParametricModel Model>
class AnticipatingResponse {
 public:
  using State = ModelState<Model>;
  using Params = ModelParams<Model>;

  AnticipatingResponse(Model model, const State& initial, double gain, std::size_t delay)
      : model_(std::move(model)), state_(initial), gain_(gain), history_(delay, initial) {
    if (!(gain >= 0.0)) throw std::invalid_argument("feedback gain must be >= 0");
    RequireFinite(initial, "anticipating response initial state");
  }

  const State& state() const noexcept { return state_; }
  double gain() const noexcept { return gain_; }
  std::size_t delay() const noexcept { return history_.depth(); }

  // alpha is taken by value from the adaptive response each step.
  void Step(const State& x_tau, const State& u, const Params& alpha, double step_size) {
    const State y_tau = history_.Push(state_);
    const State dy = EvalParametric(model_, state_, alpha, u) + gain_ * (x_tau - y_tau);
    State next = EulerStep(state_, dy, step_size);
    RequireBounded(next, "anticipating response state");
    state_ = next;
  }

 private:
  Model model_;
  State state_;
  double gain_;
  DelayLine<State> history_;
};

}  // namespace antsync
