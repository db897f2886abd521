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

#include "alos/alos_guidance.hpp"

#include <algorithm>
#include <cmath>

namespace alos {

void GuidanceParams::validate() const {
  auto require_positive = [](double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw Error(ErrorCode::kInvalidParameter, std::string("guidance.") + name + " must be > 0");
    }
  };
  require_positive(delta_h, "delta_h");
  require_positive(delta_v, "delta_v");
  require_positive(k_h, "k_h");
  require_positive(k_v, "k_v");
  require_positive(proj_bound, "proj_bound");
  require_positive(proj_layer, "proj_layer");
}

double psi_command(const SegmentGeometry& seg, const TrackingError& err, const EstimatorState& est,
                   const GuidanceParams& gp) {
  return ssa(seg.pi_h - est.beta_hat - std::atan(err.y_e / gp.delta_h));
}

PitchCommand theta_command(const SegmentGeometry& seg, const TrackingError& err,
                           const EstimatorState& est, const GuidanceParams& gp) {
  PitchCommand cmd;
  cmd.unclipped = seg.pi_v + est.alpha_hat + std::atan(err.z_e / gp.delta_v);
  cmd.theta_d = std::clamp(cmd.unclipped, -kPitchCommandLimit, kPitchCommandLimit);
  cmd.saturated = cmd.theta_d != cmd.unclipped;
  return cmd;
}

GuidanceCommand guidance_command(const SegmentGeometry& seg, const TrackingError& err,
                                 const EstimatorState& est, const GuidanceParams& gp) {
  const PitchCommand pitch = theta_command(seg, err, est, gp);
  return {psi_command(seg, err, est, gp), pitch.theta_d, pitch.saturated};
}

double projection(double estimate, double signal, const GuidanceParams& gp) {
  const double magnitude = std::abs(estimate);
  if (magnitude <= gp.proj_bound || estimate * signal <= 0.0) {
    return signal;
  }
  const double scale = std::max(0.0, 1.0 - (magnitude - gp.proj_bound) / gp.proj_layer);
  return signal * scale;
}

bool projection_active(double estimate, double signal, const GuidanceParams& gp) {
  return std::abs(estimate) > gp.proj_bound && estimate * signal > 0.0;
}

EstimatorRates estimator_rates(const TrackingError& err, const EstimatorState& est,
                               const GuidanceParams& gp) {
  EstimatorRates r;
  r.beta_hat_dot = gp.k_h * gp.delta_h / std::hypot(gp.delta_h, err.y_e) *
                   projection(est.beta_hat, err.y_e, gp);
  r.alpha_hat_dot = gp.k_v * gp.delta_v / std::hypot(gp.delta_v, err.z_e) *
                    projection(est.alpha_hat, err.z_e, gp);
  return r;
}

}  // namespace alos
