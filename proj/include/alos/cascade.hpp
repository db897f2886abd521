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
/// \brief Reduced closed-loop model: the vertical subsystem (z_e, alpha_tilde)
/// driven by the horizontal subsystem (y_e, beta_tilde) through the vanishing
/// perturbation
///
///   g = U_h sin(pi_v) (cos(beta_tilde - atan(y_e / Delta_h)) - 1).

#ifndef ALOS_CASCADE_HPP_
#define ALOS_CASCADE_HPP_

#include <cstddef>
#include <vector>

#include "alos/alos_guidance.hpp"

namespace alos {

/// xi = [z_e, alpha_tilde, y_e, beta_tilde], tilde = true - estimate.
struct CascadeState {
  double z_e = 0.0;
  double alpha_tilde = 0.0;
  double y_e = 0.0;
  double beta_tilde = 0.0;
};

/// True crab angles; the projection acts on the estimate = true - tilde.
struct TrueCrab {
  double alpha_c = 0.0;
  double beta_c = 0.0;
};

/// Diagonal weights for mixing metres and radians in |xi|.
struct XiWeights {
  double z_e = 1.0;
  double alpha = 1.0;
  double y_e = 1.0;
  double beta = 1.0;

  /// Track errors scaled by 1/Delta, angles unscaled.
  static XiWeights from_lookahead(const GuidanceParams& gp);
};

double weighted_norm(const CascadeState& xi, const XiWeights& w);

double perturbation_g(double y_e, double beta_tilde, double U_h, double pi_v,
                      const GuidanceParams& gp);

CascadeState cascade_rhs(const CascadeState& xi, double U, double U_h, double pi_v,
                         const GuidanceParams& gp, const TrueCrab& crab = {});

enum class HorizontalSpeedMode {
  kFixed,    // U_h held at the given value
  kCoupled,  // U_h = U cos(gamma), gamma = pi_v - alpha_tilde + atan(z_e/Delta_v)
};

struct CascadeSimOptions {
  double dt = 0.01;
  double duration = 100.0;
  double speed = 1.5;             // U
  double horizontal_speed = 1.5;  // U_h in kFixed mode
  HorizontalSpeedMode mode = HorizontalSpeedMode::kFixed;
  double pi_v = 0.0;
  TrueCrab crab;
  bool include_perturbation = true;  // false integrates Sigma_1 with g = 0
};

struct CascadeSample {
  double t = 0.0;
  CascadeState xi;
};

/// RK4 trajectory of the cascade, one sample per step including t = 0.
std::vector<CascadeSample> simulate_cascade(const CascadeState& xi0, const CascadeSimOptions& opts,
                                            const GuidanceParams& gp);

}  // namespace alos

#endif  // ALOS_CASCADE_HPP_
