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

#include "alos/cascade.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "alos/closed_loop_sim.hpp"
#include "support/random_states.hpp"
#include "support/scenarios.hpp"

namespace alos {
namespace {

TEST(Cascade, OriginIsEquilibrium) {
  const GuidanceParams gp;
  for (double pi_v : {-0.8, 0.0, 0.3}) {
    for (const TrueCrab crab : {TrueCrab{}, TrueCrab{0.1, -0.4}}) {
      const CascadeState d = cascade_rhs({}, 1.5, 1.2, pi_v, gp, crab);
      EXPECT_EQ(d.z_e, 0.0);
      EXPECT_EQ(d.alpha_tilde, 0.0);
      EXPECT_EQ(d.y_e, 0.0);
      EXPECT_EQ(d.beta_tilde, 0.0);
    }
  }
}

TEST(Cascade, VerticalErrorDecaysWithoutParameterError) {
  const GuidanceParams gp;
  EXPECT_LT(cascade_rhs({5.0, 0.0, 0.0, 0.0}, 1.5, 1.5, 0.0, gp).z_e, 0.0);
  EXPECT_GT(cascade_rhs({-5.0, 0.0, 0.0, 0.0}, 1.5, 1.5, 0.3, gp).z_e, 0.0);
  EXPECT_LT(cascade_rhs({0.0, 0.0, 5.0, 0.0}, 1.5, 1.5, 0.0, gp).y_e, 0.0);
}

TEST(Perturbation, ExamplesAndZeros) {
  const GuidanceParams gp;
  EXPECT_EQ(perturbation_g(0.0, 0.0, 2.0, 0.4, gp), 0.0);
  EXPECT_NEAR(perturbation_g(gp.delta_h, 0.0, 2.0, 0.3, gp),
              2.0 * std::sin(0.3) * (std::cos(std::numbers::pi / 4) - 1.0), 1e-15);
  testing::StateSampler s;
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(perturbation_g(s.uniform(-1e3, 1e3), s.uniform(-3, 3), s.uniform(0, 5), 0.0, gp), 0.0);
  }
}

TEST(Perturbation, Bound) {
  const GuidanceParams gp;
  testing::StateSampler s;
  for (int i = 0; i < 100000; ++i) {
    const double U_h = s.uniform(0.0, 5.0), pi_v = s.uniform(-1.5, 1.5);
    const double g = perturbation_g(s.uniform(-1e4, 1e4), s.uniform(-4, 4), U_h, pi_v, gp);
    ASSERT_LE(std::abs(g), 2.0 * U_h * std::abs(std::sin(pi_v)) + 1e-15);
  }
}

TEST(Cascade, WeightsAndNorm) {
  GuidanceParams gp;
  gp.delta_h = 10.0;
  gp.delta_v = 40.0;
  const XiWeights w = XiWeights::from_lookahead(gp);
  EXPECT_DOUBLE_EQ(weighted_norm({40.0, 0.0, 10.0, 0.0}, w), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(weighted_norm({0.0, 0.3, 0.0, 0.4}, w), 0.5);
}

TEST(Cascade, SimulationDecaysAndValidates) {
  const GuidanceParams gp;
  CascadeSimOptions opts;
  opts.duration = 400.0;
  opts.pi_v = 0.25;
  opts.mode = HorizontalSpeedMode::kCoupled;
  const auto traj = simulate_cascade({10.0, 0.1, -10.0, -0.1}, opts, gp);
  ASSERT_EQ(traj.size(), 40001u);
  EXPECT_DOUBLE_EQ(traj.back().t, 400.0);
  const XiWeights w = XiWeights::from_lookahead(gp);
  EXPECT_LT(weighted_norm(traj.back().xi, w), 1e-3 * weighted_norm(traj.front().xi, w));
  opts.dt = 0.0;
  EXPECT_THROW(simulate_cascade({}, opts, gp), Error);
}

TEST(Cascade, PerturbationSwitch) {
  const GuidanceParams gp;
  CascadeSimOptions opts;
  opts.duration = 50.0;
  opts.pi_v = 0.4;
  opts.include_perturbation = false;
  const auto traj = simulate_cascade({0.0, 0.0, 15.0, 0.2}, opts, gp);
  // Without g the vertical subsystem is not excited by the horizontal one.
  for (const auto& s : traj) {
    ASSERT_EQ(s.xi.z_e, 0.0);
    ASSERT_EQ(s.xi.alpha_tilde, 0.0);
  }
}

// Instantaneous error rates of the full simulation against the reduced model,
// with a current and roll present.
TEST(Cascade, MatchesFullSimulationRates) {
  testing::StateSampler s;
  for (int i = 0; i < 50; ++i) {
    ScenarioConfig cfg = testing::straight_config(s.uniform(-3, 3), s.uniform(-0.6, 0.6));
    cfg.current.velocity = {s.uniform(-0.4, 0.4), s.uniform(-0.4, 0.4), s.uniform(-0.1, 0.1)};
    cfg.vehicle.relative_velocity = {1.5, s.uniform(-0.1, 0.1), s.uniform(-0.1, 0.1)};
    cfg.vehicle.roll.offset = s.uniform(-0.3, 0.3);
    cfg.initial.offset = {0.0, s.uniform(-30, 30), s.uniform(-30, 30)};
    cfg.initial.estimate = {s.uniform(-0.3, 0.3), s.uniform(-0.3, 0.3)};
    const SimModels models = make_models(cfg);
    const SimState st = initial_state(cfg, models);
    const LogRow row = evaluate_row(st, models);
    if (row.flags & kFlagPitchSaturated) continue;  // the reduced model has no clip

    const CascadeState xi = xi_of(row);
    const CascadeState d = cascade_rhs(xi, row.speed, row.speed_horizontal, row.pi_v, cfg.guidance,
                                       {row.alpha_c, row.beta_c});
    const double h = 1e-6;
    const StepResult next = step_full(st, models, h);
    EXPECT_NEAR((next.row.error.y_e - row.error.y_e) / h, d.y_e, 1e-5);
    EXPECT_NEAR((next.row.error.z_e - row.error.z_e) / h, d.z_e, 1e-5);
    EXPECT_NEAR((next.state.estimate.alpha_hat - st.estimate.alpha_hat) / h, -d.alpha_tilde, 1e-9);
    EXPECT_NEAR((next.state.estimate.beta_hat - st.estimate.beta_hat) / h, -d.beta_tilde, 1e-9);
  }
}

// Zero current and pure surge keep the crab angles at zero, so the full
// simulation and the coupled cascade integrate the same dynamics.
TEST(Cascade, TrajectoryAgreesWithFullSimulation) {
  const double pi_v = 0.3;
  ScenarioConfig cfg = testing::straight_config(0.7, pi_v);
  cfg.initial.offset = {0.0, 12.0, -9.0};
  cfg.initial.estimate = {0.08, -0.05};
  cfg.sim.duration = 200.0;
  const SimLog log = run_scenario(cfg);
  ASSERT_FALSE(log.abort);

  CascadeSimOptions opts;
  opts.duration = 200.0;
  opts.speed = 1.5;
  opts.pi_v = pi_v;
  opts.mode = HorizontalSpeedMode::kCoupled;
  const auto traj = simulate_cascade(xi_of(log.rows.front()), opts, cfg.guidance);
  ASSERT_EQ(traj.size(), log.rows.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const CascadeState full = xi_of(log.rows[i]);
    worst = std::max({worst, std::abs(full.z_e - traj[i].xi.z_e), std::abs(full.y_e - traj[i].xi.y_e),
                      std::abs(full.alpha_tilde - traj[i].xi.alpha_tilde),
                      std::abs(full.beta_tilde - traj[i].xi.beta_tilde)});
  }
  EXPECT_LT(worst, 1e-7);
}

}  // namespace
}  // namespace alos
