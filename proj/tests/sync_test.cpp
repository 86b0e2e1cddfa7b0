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

#include "antsync/sync.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "antsync/scenario.hpp"

namespace antsync {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
const Vec2 kTheta{{-2.4525, -0.65714}};

Vec4 V4(double a, double b, double c, double d) { return Vec4{{a, b, c, d}}; }

Vec4 RandomVec4(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  return V4(n(rng), n(rng), n(rng), n(rng));
}

// Lorenz system in parametric form, theta = (sigma, rho, beta):
//   xdot = sigma (y - x), ydot = x (rho - z) - y, zdot = x y - beta z.
struct LorenzModel {
  static constexpr std::size_t kStateDim = 3;
  static constexpr std::size_t kParamDim = 3;
  Vec<3> Drift(const Vec<3>& s) const { return Vec<3>{{0.0, -s[0] * s[2] - s[1], s[0] * s[1]}}; }
  Mat<3, 3> Regressor(const Vec<3>& s) const {
    Mat<3, 3> F;
    F(0, 0) = s[1] - s[0];
    F(1, 1) = s[0];
    F(2, 2) = -s[2];
    return F;
  }
};
static_assert(ParametricModel<LorenzModel>);

// Drive image state advanced with the same Euler rule the responses use.
Vec4 DriveStep(const Vec4& x, const Vec2& theta, const Vec2& c_ddot, double T) {
  return EulerStep(x, DriveDeriv(x, theta, c_ddot), T);
}

TEST(ChenController, VanishesOnSynchronizedPair) {
  const BallImageModel model;
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const Vec4 y = RandomVec4(rng, 10.0);
    const Vec2 alpha{{std::normal_distribution<>(0, 3)(rng), std::normal_distribution<>(0, 3)(rng)}};
    EXPECT_EQ(ChenController(model, y, y, alpha), Vec4{});
  }
  const LorenzModel lorenz;
  for (int i = 0; i < 100; ++i) {
    std::normal_distribution<double> n(0.0, 10.0);
    const Vec<3> y{{n(rng), n(rng), n(rng)}};
    EXPECT_EQ(ChenController(lorenz, y, y, Vec<3>{{10.0, 28.0, 8.0 / 3.0}}), Vec<3>{});
  }
}

TEST(ChenController, HandEvaluatedScenarioCase) {
  // e = [-1,0,-2,0], f(x)-f(y) = [0,0,1,0], F constant.
  const Vec4 U = ChenController(BallImageModel{}, Vec4{}, V4(1, 0, 2, 0), kTheta);
  EXPECT_EQ(U, V4(1, 0, 3, 0));
}

TEST(ChenController, LinearDriftConstantRegressorSimplifies) {
  // With f linear and F constant, U = -e + f(x_tau - y_star).
  const BallImageModel model;
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const Vec4 y = RandomVec4(rng, 5.0);
    const Vec4 x = RandomVec4(rng, 5.0);
    const Vec2 alpha{{std::normal_distribution<>(0, 3)(rng), std::normal_distribution<>(0, 3)(rng)}};
    const Vec4 direct = ChenController(model, y, x, alpha);
    const Vec4 simplified = -(y - x) + model.Drift(x - y);
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(direct[j], simplified[j], 1e-12);
  }
}

TEST(LyapunovV, Values) {
  EXPECT_EQ(LyapunovV(Vec4{}), 0.0);
  EXPECT_EQ(LyapunovV(V4(3, 4, 0, 0)), 12.5);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const Vec4 e = RandomVec4(rng, 2.0);
    EXPECT_EQ(LyapunovV(e), LyapunovV(-e));
    EXPECT_GT(LyapunovV(e), 0.0);
  }
}

TEST(LearningUpdate, FixedPointAtZeroError) {
  const Vec2 alpha{{0.3, -0.7}};
  EXPECT_EQ(LearningUpdate(BallImageModel{}, alpha, V4(1, 2, 3, 4), Vec4{}, 1.0, 0.01), alpha);
}

TEST(LearningUpdate, RegressorSelectsVelocityErrors) {
  const Vec2 next =
      LearningUpdate(BallImageModel{}, Vec2{}, Vec4{}, V4(0.1, -0.2, 5, 3), 1.0, 0.01);
  EXPECT_NEAR(next[0], -0.001, 1e-15);
  EXPECT_NEAR(next[1], 0.002, 1e-15);
}

TEST(LearningUpdate, LinearInLearningRate) {
  const Vec4 e = V4(0.37, -1.2, 5, 3);
  const Vec2 alpha{{0.5, 0.25}};
  const Vec2 one = LearningUpdate(BallImageModel{}, alpha, Vec4{}, e, 1.0, 0.01);
  const Vec2 two = LearningUpdate(BallImageModel{}, alpha, Vec4{}, e, 2.0, 0.01);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(two[i] - alpha[i], 2.0 * (one[i] - alpha[i]), 1e-15);
}

TEST(AdaptiveResponse, OneStepComposition) {
  AdaptiveResponse<BallImageModel> resp(BallImageModel{}, Vec4{}, Vec2{}, 1.0);
  const auto err = resp.Step(V4(1, 0, 2, 0), Vec4{}, 0.01);
  EXPECT_EQ(err.e, V4(-1, 0, -2, 0));
  EXPECT_EQ(err.V, 2.5);
  EXPECT_NEAR(resp.alpha()[0], 0.01, 1e-16);
  EXPECT_EQ(resp.alpha()[1], 0.0);
  // y* moves with f(y*) + F alpha + U at the old alpha = 0: U = [1,0,3,0].
  EXPECT_EQ(resp.state(), V4(0.01, 0, 0.03, 0));
}

TEST(AdaptiveResponse, SynchronizedManifoldIsInvariant) {
  const double T = 0.01;
  Vec4 x = V4(0.5, -0.2, 1.0, 3.0);
  AdaptiveResponse<BallImageModel> resp(BallImageModel{}, x, kTheta, 1.0);
  for (int k = 0; k < 500; ++k) {
    const Vec2 c_ddot{{std::sin(0.01 * k), std::cos(0.03 * k)}};
    const Vec4 u = ActuationFromCamera(c_ddot);
    const auto err = resp.Step(x, u, T);
    EXPECT_EQ(err.V, 0.0);
    x = DriveStep(x, kTheta, c_ddot, T);
    EXPECT_EQ(resp.state(), x);
    EXPECT_EQ(resp.alpha(), kTheta);
  }
}

// Error ratios along a frozen-parameter run: alpha = theta, gamma = 0, a
// PD-stabilized drive sharing its actuation with the response.
std::vector<double> DecayRatios(const Vec4& e0, const Vec4& x0, int steps, double T) {
  const ControllerGains gains{1.0, 2.0};
  Vec4 x = x0;
  AdaptiveResponse<BallImageModel> resp(BallImageModel{}, x0 + e0, kTheta, 0.0);
  std::vector<double> ratios;
  double prev = Norm(e0);
  for (int k = 0; k < steps; ++k) {
    const Vec2 c_ddot = PdController(x, kTheta, gains);
    resp.Step(x, ActuationFromCamera(c_ddot), T);
    x = DriveStep(x, kTheta, c_ddot, T);
    const double now = Norm(resp.state() - x);
    ratios.push_back(now / prev);
    prev = now;
  }
  return ratios;
}

TEST(AdaptiveResponse, FrozenParametersGiveExactTransversalDecay) {
  const double T = 0.01;
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec4 e0 = RandomVec4(rng, 1.0);
    const Vec4 x0 = RandomVec4(rng, 0.5);
    const auto ratios = DecayRatios(e0, x0, 100, T);
    for (double r : ratios) EXPECT_NEAR(r / (1.0 - T), 1.0, 10 * kEps);
  }
}

// Acceptance criterion 7 is the 1000-step version of the test above; see
// tests/acceptance.cpp.
TEST(AdaptiveResponse, FrozenParametersDecayOver1000Steps) {
  const double T = 0.01;
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ratios = DecayRatios(RandomVec4(rng, 1.0), RandomVec4(rng, 0.5), 1000, T);
    for (double r : ratios) EXPECT_NEAR(r / (1.0 - T), 1.0, 1e-12);
  }
}

TEST(AdaptiveResponse, ExtendedLyapunovNonIncreasingUpToStepSquared) {
  const double T = 0.01;
  for (double gamma : {0.5, 1.0, 4.0}) {
    const ControllerGains gains{1.0, 2.0};
    Vec4 x = V4(0.2, -0.1, 1.0, -0.5);
    AdaptiveResponse<BallImageModel> resp(BallImageModel{}, x + V4(0.3, 0.1, -0.2, 0.4),
                                          Vec2{}, gamma);
    auto v_ext = [&](const Vec4& e, const Vec2& alpha) {
      const Vec2 d = alpha - kTheta;
      return 0.5 * Dot(e, e) + 0.5 * Dot(d, d) / gamma;
    };
    std::vector<double> values;
    double bound = 0.0;
    for (int k = 0; k < 3000; ++k) {
      const Vec4 e = resp.state() - x;
      values.push_back(v_ext(e, resp.alpha()));
      bound = std::max(bound, Dot(e, e) + Dot(resp.alpha() - kTheta, resp.alpha() - kTheta));
      const Vec2 c_ddot = PdController(x, resp.alpha(), gains);
      resp.Step(x, ActuationFromCamera(c_ddot), T);
      x = DriveStep(x, kTheta, c_ddot, T);
    }
    for (std::size_t k = 1; k < values.size(); ++k) {
      EXPECT_LE(values[k], values[k - 1] + 10.0 * T * T * bound) << "gamma " << gamma << " step " << k;
    }
    EXPECT_LT(values.back(), 1e-3 * values.front());
  }
}

TEST(AdaptiveResponse, IdentifiesLorenzParameters) {
  const LorenzModel model;
  const Vec<3> theta{{10.0, 28.0, 8.0 / 3.0}};
  const double T = 0.001;
  Vec<3> x{{1.0, 1.0, 20.0}};
  AdaptiveResponse<LorenzModel> resp(model, Vec<3>{{-3.0, 4.0, 10.0}}, Vec<3>{}, 1.0);
  for (int k = 0; k < 100000; ++k) {
    resp.Step(x, Vec<3>{}, T);
    x = EulerStep(x, EvalParametric(model, x, theta, Vec<3>{}), T);
  }
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(resp.alpha()[i], theta[i], 0.05);
}

TEST(AdaptiveResponse, DivergenceAborts) {
  AdaptiveResponse<BallImageModel> resp(BallImageModel{}, V4(0, 0, 0, 0), Vec2{}, 1.0);
  EXPECT_THROW(resp.Step(V4(0, 0, 2e11, 0), Vec4{}, 0.01), NumericalError);
}

TEST(AdaptiveResponse, RejectsNegativeLearningRate) {
  EXPECT_THROW(AdaptiveResponse<BallImageModel>(BallImageModel{}, Vec4{}, Vec2{}, -1.0),
               std::invalid_argument);
}

TEST(AnticipatingResponse, FeedbackVanishesOnAnticipatoryManifold) {
  // Feed x_tau equal to the response's own delayed state: y must follow the
  // free model.
  const BallImageModel model;
  const double T = 0.01;
  const std::size_t d = 5;
  const Vec4 y0 = V4(0.4, -0.3, 1.0, 2.0);
  AnticipatingResponse<BallImageModel> resp(model, y0, 1.0, d);
  std::vector<Vec4> history(d, y0);
  Vec4 free = y0;
  for (int k = 0; k < 300; ++k) {
    const Vec4 u = ActuationFromCamera(Vec2{{0.1 * std::sin(0.05 * k), -0.2}});
    history.push_back(resp.state());
    const Vec4 x_tau = history[history.size() - 1 - d];
    resp.Step(x_tau, u, kTheta, T);
    free = EulerStep(free, EvalParametric(model, free, kTheta, u), T);
    EXPECT_EQ(resp.state(), free);
  }
}

TEST(AnticipatingResponse, ZeroGainDecouplesFromDrive) {
  AnticipatingResponse<BallImageModel> a(BallImageModel{}, V4(1, 2, 3, 4), 0.0, 10);
  AnticipatingResponse<BallImageModel> b(BallImageModel{}, V4(1, 2, 3, 4), 0.0, 10);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const Vec4 u = ActuationFromCamera(Vec2{{0.3, -0.1}});
    a.Step(RandomVec4(rng, 100.0), u, kTheta, 0.01);
    b.Step(RandomVec4(rng, 1.0), u, kTheta, 0.01);
  }
  EXPECT_EQ(a.state(), b.state());
}

TEST(AnticipatingResponse, ZeroDelayIsCompleteSynchronization) {
  // Direct implementation of  ydot = f(y) + F theta + u + k (x - y).
  const double T = 0.01, k = 1.0;
  const ControllerGains gains{1.0, 2.0};
  Vec4 x = V4(0.5, 0.0, 1.0, -1.0);
  Vec4 y_direct = V4(-0.5, 0.2, 0.0, 0.3);
  AnticipatingResponse<BallImageModel> resp(BallImageModel{}, y_direct, k, 0);
  for (int step = 0; step < 1000; ++step) {
    const Vec2 c_ddot = PdController(x, kTheta, gains);
    const Vec4 u = ActuationFromCamera(c_ddot);
    resp.Step(x, u, kTheta, T);
    Vec4 dy;
    dy[0] = kTheta[0] + u[0] + k * (x[0] - y_direct[0]);
    dy[1] = kTheta[1] + u[1] + k * (x[1] - y_direct[1]);
    dy[2] = y_direct[0] + k * (x[2] - y_direct[2]);
    dy[3] = y_direct[1] + k * (x[3] - y_direct[3]);
    for (int i = 0; i < 4; ++i) y_direct[i] += T * dy[i];
    x = DriveStep(x, kTheta, c_ddot, T);
    for (int i = 0; i < 4; ++i) ASSERT_NEAR(resp.state()[i], y_direct[i], 1e-12);
  }
  EXPECT_LT(Norm(resp.state() - x), 1e-3);
}

TEST(AnticipatingResponse, TracksUndelayedDrive) {
  // Given the delayed drive, y converges to the current drive state.
  const double T = 0.01;
  const std::size_t d = 65;
  Vec4 x = V4(0.0, 0.0, 1.0, -0.5);
  DelayLine<Vec4> x_line(d, x);
  AnticipatingResponse<BallImageModel> resp(BallImageModel{}, x + V4(0.05, 0, 0.05, 0), 1.0, d);
  double early = 0.0, late = 0.0;
  for (int k = 0; k < 3000; ++k) {
    const Vec4 x_tau = x_line.Push(x);
    const Vec2 c_ddot{{0.5 * std::sin(0.01 * k) + kTheta[0], kTheta[1]}};
    resp.Step(x_tau, ActuationFromCamera(c_ddot), kTheta, T);
    x = DriveStep(x, kTheta, c_ddot, T);
    if (k == 100) early = Norm(resp.state() - x);
    if (k == 2999) late = Norm(resp.state() - x);
  }
  EXPECT_LT(late, 1e-3 * early);
}

}  // namespace
}  // namespace antsync
