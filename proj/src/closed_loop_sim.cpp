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

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "alos/rk4.hpp"

namespace alos {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// px, py, pz, alpha_hat, beta_hat, varpi, psi, theta
using SimVector = StateArray<8>;

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::kConfig, field + ": " + what);
}

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) {
    config_error(field, what);
  }
}

bool finite3(const NedVector& v) { return v.allFinite(); }

SimVector pack(const SimState& s) {
  return {s.vehicle.position.x(), s.vehicle.position.y(), s.vehicle.position.z(),
          s.estimate.alpha_hat,   s.estimate.beta_hat,    s.varpi,
          s.vehicle.attitude.psi, s.vehicle.attitude.theta};
}

bool lagged(const SimModels& m) {
  return m.vehicle.autopilot.mode == AutopilotModel::Mode::kFirstOrderLag;
}

// Quantities shared by the right-hand side and the log row.
struct Evaluation {
  SegmentGeometry reference;
  TrackingError error;
  GuidanceCommand command;
  EulerAngles attitude;
  BodyVelocity relative;
  NedVector ground_velocity = NedVector::Zero();
  double varpi_dot = 0.0;
};

Evaluation evaluate(double t, const SimVector& x, std::size_t segment, const SimModels& m) {
  Evaluation ev;
  const NedVector p(x[0], x[1], x[2]);
  const EstimatorState est{x[3], x[4]};
  if (m.path.curved()) {
    ev.reference = m.path.curve()->evaluate(x[5]).tangent_segment();
  } else {
    ev.reference = m.path.segments()[segment];
  }
  ev.error = tracking_errors(ev.reference, p);
  ev.command = guidance_command(ev.reference, ev.error, est, m.guidance);

  const double phi = m.vehicle.roll.at(t);
  if (lagged(m)) {
    ev.attitude = EulerAngles(phi, x[7], x[6]);
  } else {
    ev.attitude = EulerAngles(phi, ev.command.theta_d, ev.command.psi_d);
  }
  ev.relative = m.vehicle.relative_velocity_at(t);
  ev.ground_velocity = ned_velocity(ev.attitude, ev.relative) + m.current.at(t);
  if (m.path.curved()) {
    const CurvedFrameState frame =
        curved_errors_and_rates(*m.path.curve(), x[5], p, ev.ground_velocity);
    ev.varpi_dot = frame.rates.varpi_dot;
  }
  return ev;
}

SimVector derivative(double t, const SimVector& x, std::size_t segment, const SimModels& m) {
  const Evaluation ev = evaluate(t, x, segment, m);
  const EstimatorRates rates = estimator_rates(ev.error, {x[3], x[4]}, m.guidance);
  double psi_dot = 0.0;
  double theta_dot = 0.0;
  if (lagged(m)) {
    const double tau = m.vehicle.autopilot.time_constant;
    psi_dot = ssa(ev.command.psi_d - x[6]) / tau;
    theta_dot = (ev.command.theta_d - x[7]) / tau;
  }
  return {ev.ground_velocity.x(), ev.ground_velocity.y(), ev.ground_velocity.z(),
          rates.alpha_hat_dot,    rates.beta_hat_dot,     ev.varpi_dot,
          psi_dot,                theta_dot};
}

SimState unpack(const SimVector& x, double t, const SimState& previous, const SimModels& m) {
  SimState s = previous;
  s.t = t;
  s.vehicle.position = NedVector(x[0], x[1], x[2]);
  s.estimate = {x[3], x[4]};
  s.varpi = x[5];
  s.vehicle.attitude = EulerAngles(m.vehicle.roll.at(t), x[7], x[6]);
  s.vehicle.relative_velocity_body = m.vehicle.relative_velocity_at(t);
  return s;
}

// In perfect mode the attitude is algebraic; store the commanded one.
void sync_attitude(SimState& s, const SimModels& m) {
  if (lagged(m)) {
    return;
  }
  const Evaluation ev = evaluate(s.t, pack(s), s.segment, m);
  s.vehicle.attitude = ev.attitude;
}

}  // namespace

double RollProfile::at(double t) const {
  if (period <= 0.0) {
    return offset;
  }
  return offset + amplitude * std::sin(kTwoPi * t / period);
}

BodyVelocity VehicleModel::relative_velocity_at(double t) const {
  if (speed_period <= 0.0) {
    return relative_velocity;
  }
  const double mid = 0.5 * (speed_min + speed_max);
  const double amp = 0.5 * (speed_max - speed_min);
  const double speed = mid + amp * std::sin(kTwoPi * t / speed_period);
  return BodyVelocity::from(relative_velocity.vector().normalized() * speed);
}

void ScenarioConfig::validate() const {
  try {
    guidance.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
  if (const auto* poly = std::get_if<PolylinePath>(&path)) {
    require(poly->waypoints.size() >= 2, "path.waypoints", "needs at least two waypoints");
    for (const Waypoint& wp : poly->waypoints) {
      require(finite3(wp.position), "path.waypoints", "waypoint is not finite");
    }
    try {
      polyline_segments(poly->waypoints);
    } catch (const Error& e) {
      config_error("path.waypoints", e.what());
    }
    require(std::isfinite(poly->switch_radius), "path.switch_radius", "must be finite");
  } else {
    require(std::get<std::shared_ptr<const CurvedPath>>(path) != nullptr, "path", "no curve");
  }

  require(finite3(current.velocity), "current.velocity", "must be finite");
  require(finite3(current.ramp), "current.ramp", "must be finite");

  require(std::isfinite(vehicle.relative_velocity.speed()), "vehicle.relative_velocity",
          "must be finite");
  require(vehicle.relative_velocity.speed() > 0.0, "vehicle.relative_velocity",
          "relative speed must be > 0");
  if (vehicle.speed_period > 0.0) {
    require(vehicle.speed_min > 0.0, "vehicle.speed_profile.min", "must be > 0");
    require(vehicle.speed_max >= vehicle.speed_min, "vehicle.speed_profile.max",
            "must be >= min");
  }
  require(std::isfinite(vehicle.roll.offset) && std::isfinite(vehicle.roll.amplitude) &&
              std::isfinite(vehicle.roll.period),
          "vehicle.roll", "must be finite");
  if (vehicle.autopilot.mode == AutopilotModel::Mode::kFirstOrderLag) {
    require(vehicle.autopilot.time_constant > 0.0, "vehicle.autopilot.time_constant",
            "must be > 0 in lag mode");
  }
  if (initial.theta) {
    require(std::abs(*initial.theta) < std::numbers::pi / 2.0 - kPitchSingularityMargin,
            "initial.theta", "must satisfy |theta| < pi/2");
  }

  require(sim.dt > 0.0 && std::isfinite(sim.dt), "sim.dt", "must be > 0");
  require(sim.duration > 0.0 && std::isfinite(sim.duration), "sim.duration", "must be > 0");
  require(sim.convergence_tolerance > 0.0, "sim.convergence_tolerance", "must be > 0");
  require(sim.log_interval >= 1, "sim.log_interval", "must be >= 1");
  require(output.decimation >= 1, "output.decimation", "must be >= 1");
}

PathContext::PathContext(const PathDefinition& path, const GuidanceParams& gp) {
  if (const auto* poly = std::get_if<PolylinePath>(&path)) {
    segments_ = polyline_segments(poly->waypoints);
    switch_radius_ = poly->switch_radius > 0.0 ? poly->switch_radius : 2.0 * gp.delta_h;
  } else {
    curve_ = std::get<std::shared_ptr<const CurvedPath>>(path);
    if (!curve_) {
      throw Error(ErrorCode::kInvalidParameter, "path context: null curve");
    }
  }
}

SimModels make_models(const ScenarioConfig& config) {
  config.validate();
  return SimModels{PathContext(config.path, config.guidance), config.current, config.vehicle,
                   config.guidance};
}

SimState initial_state(const ScenarioConfig& config, const SimModels& models) {
  SimState s;
  s.estimate = config.initial.estimate;
  s.vehicle.relative_velocity_body = models.vehicle.relative_velocity_at(0.0);
  if (models.path.curved()) {
    const CurvedPath& curve = *models.path.curve();
    const PathPoint start = curve.evaluate(0.0);
    s.vehicle.position = position_from_errors(start.tangent_segment(), config.initial.offset);
    if (config.initial.offset.x_e != 0.0) {
      s.varpi = project_onto_path(curve, s.vehicle.position,
                                  config.initial.offset.x_e / start.tangent_norm);
    }
  } else {
    s.vehicle.position = position_from_errors(models.path.segments().front(), config.initial.offset);
  }

  // Lag-mode attitude defaults to the first command.
  s.vehicle.attitude = EulerAngles(models.vehicle.roll.at(0.0), 0.0, 0.0);
  const Evaluation ev = [&] {
    SimModels perfect = models;
    perfect.vehicle.autopilot.mode = AutopilotModel::Mode::kPerfect;
    return evaluate(0.0, pack(s), s.segment, perfect);
  }();
  s.vehicle.attitude = EulerAngles(models.vehicle.roll.at(0.0),
                                   config.initial.theta.value_or(ev.command.theta_d),
                                   config.initial.psi.value_or(ev.command.psi_d));
  return s;
}

LogRow evaluate_row(const SimState& state, const SimModels& models) {
  const Evaluation ev = evaluate(state.t, pack(state), state.segment, models);
  LogRow row;
  row.t = state.t;
  row.position = state.vehicle.position;
  row.attitude = ev.attitude;
  row.error = ev.error;
  row.psi_d = ev.command.psi_d;
  row.theta_d = ev.command.theta_d;
  row.alpha_hat = state.estimate.alpha_hat;
  row.beta_hat = state.estimate.beta_hat;
  row.pi_v = ev.reference.pi_v;
  row.segment_or_varpi =
      models.path.curved() ? state.varpi : static_cast<double>(state.segment);

  const SphericalVelocity sv = spherical_velocity(ev.ground_velocity);
  const CrabAngles ca = spherical_crab_from_angles(ev.attitude, sv);
  row.alpha_c = ca.alpha_c;
  row.beta_c = ca.beta_c;
  row.gamma = sv.flight_path;
  row.speed = sv.speed_total;
  row.speed_horizontal = sv.speed_horizontal;

  // The body-velocity model works with the ground velocity in BODY.
  const BodyVelocity vb_ground = BodyVelocity::from(
      rotation_body_to_ned(ev.attitude).transpose() * ev.ground_velocity);
  try {
    row.alpha_c_star = body_crab_angles(ev.attitude, vb_ground).alpha_c_star;
  } catch (const Error&) {
    row.alpha_c_star = std::numeric_limits<double>::quiet_NaN();
    row.flags |= kFlagAlphaStarUndefined;
  }

  if (ev.command.pitch_saturated) {
    row.flags |= kFlagPitchSaturated;
  }
  if (projection_active(state.estimate.alpha_hat, ev.error.z_e, models.guidance)) {
    row.flags |= kFlagProjectionAlpha;
  }
  if (projection_active(state.estimate.beta_hat, ev.error.y_e, models.guidance)) {
    row.flags |= kFlagProjectionBeta;
  }
  return row;
}

StepResult step_full(const SimState& state, const SimModels& models, double dt) {
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "step_full: dt must be > 0");
  }
  const std::size_t segment = state.segment;
  auto rhs = [&](double t, const SimVector& x) { return derivative(t, x, segment, models); };
  const SimVector next = rk4_step<8>(rhs, state.t, pack(state), dt);
  for (double v : next) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kDomain, "state became non-finite");
    }
  }

  StepResult out;
  out.state = unpack(next, state.t + dt, state, models);
  bool switched = false;
  if (!models.path.curved()) {
    const auto& segs = models.path.segments();
    while (out.state.segment + 1 < segs.size() &&
           switch_segment(segs[out.state.segment],
                          tracking_errors(segs[out.state.segment], out.state.vehicle.position),
                          models.path.switch_radius())) {
      ++out.state.segment;
      switched = true;
    }
  }
  sync_attitude(out.state, models);
  out.row = evaluate_row(out.state, models);
  if (switched) {
    out.row.flags |= kFlagSegmentSwitch;
  }
  out.state.saturated_time =
      (out.row.flags & kFlagPitchSaturated) ? state.saturated_time + dt : 0.0;
  return out;
}

SimLog run_scenario(const ScenarioConfig& config) {
  const SimModels models = make_models(config);
  const double dt = config.sim.dt;
  const auto steps = static_cast<std::size_t>(std::llround(config.sim.duration / dt));
  const std::size_t every = config.sim.log_interval;

  SimLog log;
  log.dt = dt * static_cast<double>(every);
  log.rows.reserve(steps / every + 2);

  std::size_t step = 0;
  try {
    SimState state = initial_state(config, models);
    sync_attitude(state, models);
    log.rows.push_back(evaluate_row(state, models));
    const double varpi_end = models.path.curved() ? models.path.curve()->varpi_max()
                                                  : std::numeric_limits<double>::infinity();
    for (step = 1; step <= steps; ++step) {
      // Exact multiple of dt keeps time bit-identical across runs.
      StepResult r = step_full(state, models, dt);
      r.state.t = static_cast<double>(step) * dt;
      r.row.t = r.state.t;
      state = r.state;

      bool at_end = state.varpi >= varpi_end;
      if (!models.path.curved()) {
        const auto& segs = models.path.segments();
        const SegmentGeometry& last = segs.back();
        at_end = state.segment + 1 == segs.size() &&
                 tracking_errors(last, state.vehicle.position).x_e >= last.length;
      }
      if (at_end) {
        r.row.flags |= kFlagPathEnd;
      }
      if (step % every == 0 || at_end) {
        log.rows.push_back(r.row);
      }
      if (config.sim.saturation_abort_time > 0.0 &&
          state.saturated_time > config.sim.saturation_abort_time + 0.5 * dt) {
        log.abort = AbortInfo{step, state.t, ErrorCode::kCommandSaturation,
                              "pitch command saturated for more than " +
                                  std::to_string(config.sim.saturation_abort_time) + " s"};
        break;
      }
      if (at_end) {
        log.path_completed = true;
        break;
      }
    }
  } catch (const Error& e) {
    log.abort = AbortInfo{step, static_cast<double>(step) * dt, e.code(), e.what()};
  }
  return log;
}

CascadeState xi_of(const LogRow& row) {
  return {row.error.z_e, row.alpha_c - row.alpha_hat, row.error.y_e,
          ssa(row.beta_c - row.beta_hat)};
}

}  // namespace alos
