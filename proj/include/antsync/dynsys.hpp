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

// Numerical substrate: fixed-size vectors and matrices, parametric system
// models of the form  xdot = f(x) + F(x) p + u, forward Euler, delay lines.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace antsync {

// Raised for NaN/Inf or divergent states. The simulation loop fills in the
// step index and signal name before letting it escape.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what,
                          std::optional<long> step = std::nullopt,
                          std::string signal = {})
      : std::runtime_error(Format(what, step, signal)),
        detail_(what),
        step_(step),
        signal_(std::move(signal)) {}

  const std::string& detail() const noexcept { return detail_; }
  std::optional<long> step() const noexcept { return step_; }
  const std::string& signal() const noexcept { return signal_; }

  NumericalError WithContext(long step, std::string signal) const {
    return NumericalError(detail_, step, signal_.empty() ? std::move(signal) : signal_);
  }

 private:
  static std::string Format(const std::string& what, std::optional<long> step,
                            const std::string& signal) {
    std::string msg = what;
    if (!signal.empty()) msg += " [signal " + signal + "]";
    if (step) msg += " at step " + std::to_string(*step);
    return msg;
  }

  std::string detail_;
  std::optional<long> step_;
  std::string signal_;
};

/// Fixed-dimension real vector. Used for states, state derivatives,
/// actuation vectors and parameter vectors.
template <std::size_t N>
struct Vec {
  std::array<double, N> data{};

  static constexpr std::size_t size() noexcept { return N; }

  constexpr double& operator[](std::size_t i) { return data[i]; }
  constexpr const double& operator[](std::size_t i) const { return data[i]; }

  auto begin() noexcept { return data.begin(); }
  auto end() noexcept { return data.end(); }
  auto begin() const noexcept { return data.begin(); }
  auto end() const noexcept { return data.end(); }

  constexpr Vec& operator+=(const Vec& o) {
    for (std::size_t i = 0; i < N; ++i) data[i] += o.data[i];
    return *this;
  }
  constexpr Vec& operator-=(const Vec& o) {
    for (std::size_t i = 0; i < N; ++i) data[i] -= o.data[i];
    return *this;
  }
  constexpr Vec& operator*=(double s) {
    for (auto& v : data) v *= s;
    return *this;
  }

  friend constexpr Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend constexpr Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend constexpr Vec operator-(Vec a) { return a *= -1.0; }
  friend constexpr Vec operator*(double s, Vec a) { return a *= s; }
  friend constexpr Vec operator*(Vec a, double s) { return a *= s; }
  friend constexpr bool operator==(const Vec&, const Vec&) = default;

  static constexpr Vec Zero() { return Vec{}; }
};

template <std::size_t N>
using StateVec = Vec<N>;
template <std::size_t M>
using ParamVec = Vec<M>;

template <std::size_t N>
constexpr double Dot(const Vec<N>& a, const Vec<N>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
  return s;
}

template <std::size_t N>
double Norm(const Vec<N>& a) {
  return std::sqrt(Dot(a, a));
}

template <std::size_t N>
double NormInf(const Vec<N>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

template <std::size_t N>
bool AllFinite(const Vec<N>& a) {
  for (double v : a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

template <std::size_t N>
void RequireFinite(const Vec<N>& a, const char* what) {
  if (!AllFinite(a)) throw NumericalError(std::string("non-finite ") + what);
}

/// Dense row-major N x M matrix.
template <std::size_t N, std::size_t M>
struct Mat {
  std::array<double, N * M> data{};

  constexpr double& operator()(std::size_t r, std::size_t c) { return data[r * M + c]; }
  constexpr const double& operator()(std::size_t r, std::size_t c) const {
    return data[r * M + c];
  }

  constexpr Mat& operator-=(const Mat& o) {
    for (std::size_t i = 0; i < N * M; ++i) data[i] -= o.data[i];
    return *this;
  }
  friend constexpr Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend constexpr bool operator==(const Mat&, const Mat&) = default;

  constexpr Vec<N> operator*(const Vec<M>& p) const {
    Vec<N> out;
    for (std::size_t r = 0; r < N; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < M; ++c) s += (*this)(r, c) * p[c];
      out[r] = s;
    }
    return out;
  }

  /// Computes A^T v.
  constexpr Vec<M> TransposeTimes(const Vec<N>& v) const {
    Vec<M> out;
    for (std::size_t r = 0; r < N; ++r) {
      for (std::size_t c = 0; c < M; ++c) out[c] += (*this)(r, c) * v[r];
    }
    return out;
  }
};

// A parametric system model  xdot = f(x) + F(x) p + u.  f is the drift and F
// the regressor; both must be pure functions of the state.
template <class Model>
concept ParametricModel = requires(const Model& model, const Vec<Model::kStateDim>& x) {
  { Model::kStateDim } -> std::convertible_to<std::size_t>;
  { Model::kParamDim } -> std::convertible_to<std::size_t>;
  { model.Drift(x) } -> std::same_as<Vec<Model::kStateDim>>;
  { model.Regressor(x) } -> std::same_as<Mat<Model::kStateDim, Model::kParamDim>>;
};

template <ParametricModel Model>
using ModelState = Vec<Model::kStateDim>;
template <ParametricModel Model>
using ModelParams = Vec<Model::kParamDim>;

/// One forward Euler step, x + T dx.
template <std::size_t N>
Vec<N> EulerStep(const Vec<N>& x, const Vec<N>& dx, double step_size) {
  if (!(step_size > 0.0)) throw std::invalid_argument("euler step size must be positive");
  Vec<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = x[i] + step_size * dx[i];
  RequireFinite(out, "state after euler step");
  return out;
}

/// f(x) + F(x) p + u.
template <ParametricModel Model>
ModelState<Model> EvalParametric(const Model& model, const ModelState<Model>& x,
                                 const ModelParams<Model>& p, const ModelState<Model>& u) {
  ModelState<Model> out = model.Drift(x) + model.Regressor(x) * p + u;
  RequireFinite(out, "model derivative");
  return out;
}

// Converts a duration to a whole number of samples, rejecting durations that
// are not an integer multiple of the step.
inline long SamplesFor(double seconds, double step_size, const char* what) {
  if (!(step_size > 0.0)) throw std::invalid_argument("step size must be positive");
  if (!(seconds >= 0.0) || !std::isfinite(seconds)) {
    throw std::invalid_argument(std::string(what) + " must be finite and >= 0");
  }
  const double ratio = seconds / step_size;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, rounded)) {
    throw std::invalid_argument(std::string(what) + " is not an integer number of samples");
  }
  return static_cast<long>(rounded);
}

/// Fixed-depth FIFO. Each Push returns the sample pushed `depth` calls
/// earlier; a depth-0 line returns its input. The buffer starts filled with
/// `depth` copies of the initial value.
template <class Sample>
class DelayLine {
 public:
  DelayLine(std::size_t depth, const Sample& initial) : buffer_(depth, initial) {}

  std::size_t depth() const noexcept { return buffer_.size(); }

  Sample Push(const Sample& sample) {
    if (buffer_.empty()) return sample;
    Sample out = std::exchange(buffer_[head_], sample);
    head_ = (head_ + 1) % buffer_.size();
    return out;
  }

 private:
  std::vector<Sample> buffer_;
  std::size_t head_ = 0;
};

}  // namespace antsync
