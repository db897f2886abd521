/*
 * Copyright 2026 The ALOS Guidance Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "alos/closed_loop_sim.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>

#include "alos/rate_fit.hpp"
#include "support/scenarios.hpp"

namespace alos {
namespace {

double final_error_norm(const SimLog& log) {
  const auto& e = log.rows.back().error;
  return std::hypot(e.y_e, e.z_e);
}

TEST(ClosedLoop, EquilibriumIsInvariant) {
  ScenarioConfig cfg = testing::straight_config(0.6, -0.2);
  cfg.sim.duration = 100.0;
  const SimLog log = run_scenario(cfg);
  ASSERT_FALSE(log.abort);
  for (const LogRow& r : log.rows) {
    ASSERT_LT(std::abs(r.error.y_e), 1e-9);
    ASSERT_LT(std::abs(r.error.z_e), 1e-9);
    ASSERT_LT(std::abs(r.alpha_hat), 1e-12);
    ASSERT_LT(std::abs(r.beta_hat), 1e-12);
  }
}

TEST(ClosedLoop, LevelPathWithoutCurrent) {
  ScenarioConfig cfg = testing::straight_config(0.0, 0.0);
  cfg.initial.offset = {0, 15, -5};
  cfg.sim.duration = 600.0;
  const SimLog log = run_scenario(cfg);
  ASSERT_FALSE(log.abort);
  EXPECT_LT(final_error_norm(log), 1e-3);
  EXPECT_DOUBLE_EQ(log.rows.back().t, 600.0);
  EXPECT_EQ(log.rows.size(), 60001u);
}

TEST(ClosedLoop, ConstantCurrentIsCompensated) {
  ScenarioConfig cfg = testing::straight_config(0.4, -0.25);
  cfg.current.velocity = {0.1, 0.35, 0.05};
  cfg.initial.offset = {0, -10, 8};
  cfg.sim.duration = 1200.0;
  const SimLog log = run_scenario(cfg);
  ASSERT_FALSE(log.abort);
  const LogRow& last = log.rows.back();
  EXPECT_LT(std::abs(last.error.y_e), 1e-6);
  EXPECT_LT(std::abs(last.error.z_e), 1e-6);
  EXPECT_GT(std::abs(last.beta_c), 0.1);
  EXPECT_NEAR(last.alpha_hat, last.alpha_c, 1e-6);
  EXPECT_NEAR(last.beta_hat, last.beta_c, 1e-6);
  EXPECT_GT(std::abs(last.alpha_c_star - last.alpha_hat), 1e-3);
}

TEST(ClosedLoop, RichardsonFourthOrder) {
  auto final_position = [](double dt) {
    ScenarioConfig cfg = testing::straight_config(0.4, -0.25);
    cfg.current.velocity = {0.1, 0.35, 0.05};
    cfg.initial.offset = {0, -10, 8};
    cfg.initial.estimate = {0.05, -0.1};
    cfg.vehicle.roll = {0.05, 0.1, 20.0};
    cfg.sim.dt = dt;
    cfg.sim.duration = 40.0;
    const SimLog log = run_scenario(cfg);
    EXPECT_FALSE(log.abort);
    return log.rows.back().position;
  };
  const NedVector a = final_position(0.4), b = final_position(0.2), c = final_position(0.1);
  const double order = std::log2((a - b).norm() / (b - c).norm());
  EXPECT_GE(order, 3.8);
  EXPECT_LE(order, 4.5);
}

TEST(ClosedLoop, Deterministic) {
  ScenarioConfig cfg = testing::straight_config(0.4, -0.25);
  cfg.current.velocity = {0.1, 0.35, 0.05};
  cfg.initial.offset = {0, -10, 8};
  cfg.sim.duration = 50.0;
  const SimLog a = run_scenario(cfg), b = run_scenario(cfg);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    ASSERT_EQ(std::memcmp(a.rows[i].position.data(), b.rows[i].position.data(), 3 * sizeof(double)), 0);
    ASSERT_EQ(a.rows[i].alpha_hat, b.rows[i].alpha_hat);
    ASSERT_EQ(a.rows[i].t, b.rows[i].t);
  }
}

TEST(ClosedLoop, LagAutopilotConverges) {
  ScenarioConfig cfg = testing::straight_config(-1.0, 0.15);
  cfg.current.velocity = {0.0, 0.3, 0.0};
  cfg.vehicle.autopilot = {AutopilotModel::Mode::kFirstOrderLag, 2.0};
  cfg.initial.offset = {0, 20, 10};
  cfg.initial.psi = 0.5;
  cfg.initial.theta = 0.0;
  cfg.sim.duration = 1500.0;
  const SimLog log = run_scenario(cfg);
  ASSERT_FALSE(log.abort);
  EXPECT_DOUBLE_EQ(log.rows.front().attitude.psi, 0.5);
  EXPECT_LT(final_error_norm(log), 1e-4);
}

TEST(ClosedLoop, TimeVaryingSpeedAndRoll) {
  ScenarioConfig cfg = testing::straight_config(2.0, -0.3);
  cfg.vehicle.speed_min = 1.0;
  cfg.vehicle.speed_max = 2.0;
  cfg.vehicle.speed_period = 60.0;
  cfg.vehicle.roll = {0.0, 0.3, 15.0};
  cfg.initial.offset = {0, 25, -25};
  cfg.sim.duration = 1500.0;
  SimLog log = run_scenario(cfg);
  ASSERT_FALSE(log.abort);
  double umin = 1e9, umax = 0.0;
  for (const LogRow& r : log.rows) {
    umin = std::min(umin, r.speed);
    umax = std::max(umax, r.speed);
  }
  EXPECT_LT(umin, 1.2);
  EXPECT_GT(umax, 1.8);
  EXPECT_LT(final_error_norm(log), 1e-6);

  // A current makes the crab angles speed dependent; errors stay bounded.
  cfg.current.velocity = {0.2, -0.2, 0.0};
  log = run_scenario(cfg);
  ASSERT_FALSE(log.abort);
  EXPECT_LT(final_error_norm(log), 2.0);
}

TEST(ClosedLoop, RampedCurrentRuns) {
  ScenarioConfig cfg = testing::straight_config(0.0, -0.2);
  cfg.current.velocity = {0.0, 0.1, 0.0};
  cfg.current.ramp = {0.0, 2e-4, 0.0};
  cfg.sim.duration = 1000.0;
  const SimLog log = run_scenario(cfg);
  ASSERT_FALSE(log.abort);
  // Slowly varying current: errors stay small, estimate lags the crab angle.
  EXPECT_LT(final_error_norm(log), 1.0);
  EXPECT_LT(std::abs(log.rows.back().beta_c - log.rows.back().beta_hat), 0.05);
}

TEST(ClosedLoop, SwitchesSegmentsAndStopsAtPathEnd) {
  ScenarioConfig cfg;
  cfg.path = PolylinePath{{Waypoint{{0, 0, 0}}, Waypoint{{300, 0, 50}}, Waypoint{{300, 300, 50}},
                           Waypoint{{0, 300, 0}}},
                          0.0};
  cfg.current.velocity = {0.2, 0.0, 0.0};
  cfg.sim.duration = 5000.0;
  const SimLog log = run_scenario(cfg);
  ASSERT_FALSE(log.abort);
  EXPECT_TRUE(log.path_completed);
  EXPECT_TRUE(log.rows.back().flags & kFlagPathEnd);
  EXPECT_LT(log.rows.back().t, 5000.0);
  int switches = 0;
  double segment = 0.0;
  for (const LogRow& r : log.rows) {
    if (r.flags & kFlagSegmentSwitch) {
      ++switches;
      EXPECT_EQ(r.segment_or_varpi, segment + 1.0);
    }
    segment = r.segment_or_varpi;
  }
  EXPECT_EQ(switches, 2);
  EXPECT_EQ(segment, 2.0);
}

TEST(ClosedLoop, EstimatesCarryAcrossSwitch) {
  ScenarioConfig cfg;
  cfg.path = PolylinePath{{Waypoint{{0, 0, 0}}, Waypoint{{200, 0, 0}}, Waypoint{{200, 200, 0}}}, 0.0};
  cfg.initial.estimate = {0.01, 0.02};
  cfg.sim.duration = 400.0;
  const SimLog log = run_scenario(cfg);
  for (std::size_t i = 1; i < log.rows.size(); ++i) {
    if (log.rows[i].flags & kFlagSegmentSwitch) {
      EXPECT_NEAR(log.rows[i].beta_hat, log.rows[i - 1].beta_hat, 1e-5);
      return;
    }
  }
  FAIL() << "no switch";
}

TEST(ClosedLoop, PersistentPitchSaturationAborts) {
  ScenarioConfig cfg = testing::straight_config(0.0, -1.45);
  cfg.initial.estimate = {-0.1, 0.0};
  cfg.sim.saturation_abort_time = 2.0;
  const SimLog log = run_scenario(cfg);
  ASSERT_TRUE(log.abort);
  EXPECT_EQ(log.abort->code, ErrorCode::kCommandSaturation);
  EXPECT_EQ(log.abort->step, 201u);
  EXPECT_TRUE(log.rows.back().flags & kFlagPitchSaturated);

  cfg.sim.saturation_abort_time = 0.0;
  cfg.sim.duration = 10.0;
  EXPECT_FALSE(run_scenario(cfg).abort);
}

TEST(ClosedLoop, CurvedPathSingularityAborts) {
  ScenarioConfig cfg = testing::curved_config(std::make_shared<HelixPath>(NedVector::Zero(), 30.0, 0.0, 1));
  cfg.initial.offset = {0, 60, 0};  // beyond the centre of curvature
  const SimLog log = run_scenario(cfg);
  ASSERT_TRUE(log.abort);
  EXPECT_EQ(log.abort->code, ErrorCode::kPathFrameSingularity);
}

TEST(ClosedLoop, VerticalArcCompletes) {
  ScenarioConfig cfg =
      testing::curved_config(std::make_shared<VerticalArcPath>(NedVector::Zero(), 300.0, 0.3, -0.5, 0.5));
  cfg.initial.offset = {0, 5, 5};
  cfg.sim.duration = 2000.0;
  const SimLog log = run_scenario(cfg);
  ASSERT_FALSE(log.abort);
  EXPECT_TRUE(log.path_completed);
  EXPECT_GE(log.rows.back().segment_or_varpi, 1.0);
}

TEST(ClosedLoop, EnvelopeDecaysMonotonically) {
  ScenarioConfig cfg = testing::straight_config(0.4, -0.25);
  cfg.current.velocity = {0.1, 0.35, 0.05};
  cfg.initial.offset = {0, -10, 8};
  cfg.sim.duration = 600.0;
  const SimLog log = run_scenario(cfg);
  FitOptions opts;
  opts.weights = XiWeights::from_lookahead(cfg.guidance);
  std::vector<double> norm;
  for (const LogRow& r : log.rows) norm.push_back(masked_norm(xi_of(r), opts));
  std::vector<double> peaks;
  for (std::size_t i = 1; i + 1 < norm.size(); ++i) {
    if (log.rows[i].t > 60.0 && norm[i] > norm[i - 1] && norm[i] >= norm[i + 1] && norm[i] > 1e-9) {
      peaks.push_back(norm[i]);
    }
  }
  for (std::size_t i = 1; i < peaks.size(); ++i) {
    EXPECT_LE(peaks[i], peaks[i - 1]);
  }
  EXPECT_LT(norm.back(), 1e-5 * norm.front());
}

TEST(ClosedLoop, ConfigValidation) {
  ScenarioConfig cfg = testing::straight_config(0, 0);
  cfg.sim.dt = 0.0;
  EXPECT_THROW(run_scenario(cfg), Error);
  cfg = testing::straight_config(0, 0);
  cfg.vehicle.relative_velocity = {0, 0, 0};
  EXPECT_THROW(cfg.validate(), Error);
  EXPECT_THROW(step_full(SimState{}, make_models(testing::straight_config(0, 0)), -1.0), Error);
}

}  // namespace
}  // namespace alos
