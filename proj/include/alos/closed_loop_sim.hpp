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

/// \file
/// \brief Deterministic closed-loop kinematic simulation of a vehicle under
/// ALOS guidance with a constant or ramped current.
///
/// The vehicle moves with a water-relative body velocity of prescribed
/// direction and (optionally time-varying) magnitude; its ground velocity is
/// R_b^n v_rel + current. Heading and pitch follow the guidance commands
/// either exactly or through a first-order lag, roll is exogenous. The
/// continuous state (position, estimates, path parameter, and the lagged
/// attitude) is advanced by fixed-step RK4.

#ifndef ALOS_CLOSED_LOOP_SIM_HPP_
#define ALOS_CLOSED_LOOP_SIM_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "alos/alos_guidance.hpp"
#include "alos/cascade.hpp"
#include "alos/curved_path.hpp"

namespace alos {

struct VehicleState {
  NedVector position = NedVector::Zero();
  EulerAngles attitude;
  BodyVelocity relative_velocity_body;
};

struct CurrentModel {
  NedVector velocity = NedVector::Zero();  // m/s
  NedVector ramp = NedVector::Zero();      // m/s^2

  NedVector at(double t) const { return velocity + ramp * t; }
};

struct AutopilotModel {
  enum class Mode { kPerfect, kFirstOrderLag };
  Mode mode = Mode::kPerfect;
  double time_constant = 1.0;  // s, lag mode only
};

/// phi(t) = offset + amplitude sin(2 pi t / period); period <= 0 is constant.
struct RollProfile {
  double offset = 0.0;
  double amplitude = 0.0;
  double period = 0.0;

  double at(double t) const;
};

struct VehicleModel {
  /// Water-relative body velocity; its direction is kept, its magnitude is
  /// replaced by the speed profile when one is set.
  BodyVelocity relative_velocity{1.5, 0.0, 0.0};
  /// Sinusoidal speed between speed_min and speed_max; speed_period <= 0 keeps
  /// |relative_velocity|.
  double speed_min = 0.0;
  double speed_max = 0.0;
  double speed_period = 0.0;
  RollProfile roll;
  AutopilotModel autopilot;

  BodyVelocity relative_velocity_at(double t) const;
};

struct PolylinePath {
  std::vector<Waypoint> waypoints;
  double switch_radius = 0.0;  // <= 0 selects 2 Delta_h
};

using PathDefinition = std::variant<PolylinePath, std::shared_ptr<const CurvedPath>>;

struct InitialCondition {
  TrackingError offset;     // initial error in the start frame
  EstimatorState estimate;  // initial crab estimates
  std::optional<double> psi;    // lag mode; defaults to the first command
  std::optional<double> theta;  // lag mode; defaults to the first command
};

struct SimOptions {
  double dt = 0.01;
  double duration = 600.0;
  /// Abort when the pitch command stays clipped longer than this; <= 0 never aborts.
  double saturation_abort_time = 30.0;
  double convergence_tolerance = 0.1;  // m, final |y_e| and |z_e|
  std::size_t log_interval = 1;        // steps between stored log rows
};

struct OutputOptions {
  std::string csv_path;
  std::size_t decimation = 1;
};

struct ScenarioConfig {
  PathDefinition path = PolylinePath{};
  CurrentModel current;
  VehicleModel vehicle;
  GuidanceParams guidance;
  InitialCondition initial;
  SimOptions sim;
  OutputOptions output;
  std::uint64_t seed = 1;

  /// Re-checks every constraint; throws Error(kConfig) naming the field.
  void validate() const;
};

enum LogFlag : std::uint32_t {
  kFlagPitchSaturated = 1u << 0,
  kFlagProjectionAlpha = 1u << 1,
  kFlagProjectionBeta = 1u << 2,
  kFlagSegmentSwitch = 1u << 3,
  kFlagAlphaStarUndefined = 1u << 4,
  kFlagPathEnd = 1u << 5,
};

struct LogRow {
  double t = 0.0;
  NedVector position = NedVector::Zero();
  EulerAngles attitude;
  TrackingError error;
  double psi_d = 0.0;
  double theta_d = 0.0;
  double alpha_c = 0.0;
  double alpha_c_star = 0.0;  // NaN where the body-velocity model is undefined
  double beta_c = 0.0;
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  double gamma = 0.0;
  double speed = 0.0;
  double speed_horizontal = 0.0;
  double pi_v = 0.0;
  double segment_or_varpi = 0.0;
  std::uint32_t flags = 0;
};

struct AbortInfo {
  std::size_t step = 0;
  double t = 0.0;
  ErrorCode code = ErrorCode::kDomain;
  std::string message;
};

struct SimLog {
  double dt = 0.0;  // time between rows
  std::vector<LogRow> rows;
  std::optional<AbortInfo> abort;
  bool path_completed = false;
};

/// Everything that stays fixed during a run.
class PathContext {
 public:
  PathContext(const PathDefinition& path, const GuidanceParams& gp);

  bool curved() const { return curve_ != nullptr; }
  const std::vector<SegmentGeometry>& segments() const { return segments_; }
  const CurvedPath* curve() const { return curve_.get(); }
  double switch_radius() const { return switch_radius_; }

 private:
  std::vector<SegmentGeometry> segments_;
  std::shared_ptr<const CurvedPath> curve_;
  double switch_radius_ = 0.0;
};

struct SimModels {
  PathContext path;
  CurrentModel current;
  VehicleModel vehicle;
  GuidanceParams guidance;
};

struct SimState {
  double t = 0.0;
  VehicleState vehicle;
  EstimatorState estimate;
  double varpi = 0.0;
  std::size_t segment = 0;
  double saturated_time = 0.0;
};

struct StepResult {
  SimState state;
  LogRow row;
};

/// Log row for a state: errors, commands, crab angles of both models.
LogRow evaluate_row(const SimState& state, const SimModels& models);

/// Advances one RK4 step, then applies segment switching. Throws Error on
/// chart singularity, zero horizontal speed or a singular path frame.
StepResult step_full(const SimState& state, const SimModels& models, double dt);

/// Initial state of a scenario, placed at the configured offset.
SimState initial_state(const ScenarioConfig& config, const SimModels& models);

SimModels make_models(const ScenarioConfig& config);

/// Full run, ending early once the last segment or the curve parameter range
/// is exhausted. Aborts are recorded in SimLog::abort with the step index;
/// identical configs give bit-identical logs.
SimLog run_scenario(const ScenarioConfig& config);

/// xi = [z_e, alpha_c - alpha_hat, y_e, ssa(beta_c - beta_hat)] of a row.
CascadeState xi_of(const LogRow& row);

}  // namespace alos

#endif  // ALOS_CLOSED_LOOP_SIM_HPP_
