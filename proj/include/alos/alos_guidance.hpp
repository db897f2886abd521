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
/// \brief Adaptive line-of-sight guidance for 3-D path following.
///
///   psi_d     = pi_h - beta_hat - atan(y_e / Delta_h)
///   theta_d   = pi_v + alpha_hat + atan(z_e / Delta_v)
///   beta_hat' = k_h Delta_h / sqrt(Delta_h^2 + y_e^2) Proj(beta_hat, y_e)
///   alpha_hat'= k_v Delta_v / sqrt(Delta_v^2 + z_e^2) Proj(alpha_hat, z_e)

#ifndef ALOS_ALOS_GUIDANCE_HPP_
#define ALOS_ALOS_GUIDANCE_HPP_

#include <numbers>

#include "alos/path_frame.hpp"

namespace alos {

/// Pitch commands are clipped to +-(pi/2 - 5 deg).
inline constexpr double kPitchCommandLimit = std::numbers::pi / 2.0 - 5.0 * std::numbers::pi / 180.0;

struct GuidanceParams {
  double delta_h = 20.0;   // m
  double delta_v = 20.0;   // m
  double k_h = 0.0015;     // rad/(m s)
  double k_v = 0.0015;     // rad/(m s)
  double proj_bound = 45.0 * std::numbers::pi / 180.0;  // L, rad
  double proj_layer = 5.0 * std::numbers::pi / 180.0;   // epsilon, rad

  /// Throws Error(kInvalidParameter) naming the first violated constraint.
  void validate() const;
};

struct EstimatorState {
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
};

struct EstimatorRates {
  double alpha_hat_dot = 0.0;
  double beta_hat_dot = 0.0;
};

struct PitchCommand {
  double theta_d = 0.0;    // after clipping
  double unclipped = 0.0;
  bool saturated = false;
};

struct GuidanceCommand {
  double psi_d = 0.0;
  double theta_d = 0.0;
  bool pitch_saturated = false;
};

double psi_command(const SegmentGeometry& seg, const TrackingError& err, const EstimatorState& est,
                   const GuidanceParams& gp);

PitchCommand theta_command(const SegmentGeometry& seg, const TrackingError& err,
                           const EstimatorState& est, const GuidanceParams& gp);

GuidanceCommand guidance_command(const SegmentGeometry& seg, const TrackingError& err,
                                 const EstimatorState& est, const GuidanceParams& gp);

/// Boundary-layer parameter projection. Passes `signal` unchanged inside
/// |estimate| <= L or when it points inward; scales it by
/// max(0, 1 - (|estimate| - L)/epsilon) when pointing outward in the layer.
double projection(double estimate, double signal, const GuidanceParams& gp);

/// True when projection() is modifying the signal.
bool projection_active(double estimate, double signal, const GuidanceParams& gp);

EstimatorRates estimator_rates(const TrackingError& err, const EstimatorState& est,
                               const GuidanceParams& gp);

}  // namespace alos

#endif  // ALOS_ALOS_GUIDANCE_HPP_
