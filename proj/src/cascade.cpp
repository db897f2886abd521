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

#include <cmath>

#include "alos/rk4.hpp"

namespace alos {

XiWeights XiWeights::from_lookahead(const GuidanceParams& gp) {
  return {1.0 / gp.delta_v, 1.0, 1.0 / gp.delta_h, 1.0};
}

double weighted_norm(const CascadeState& xi, const XiWeights& w) {
  const double a = w.z_e * xi.z_e;
  const double b = w.alpha * xi.alpha_tilde;
  const double c = w.y_e * xi.y_e;
  const double d = w.beta * xi.beta_tilde;
  return std::sqrt(a * a + b * b + c * c + d * d);
}

double perturbation_g(double y_e, double beta_tilde, double U_h, double pi_v,
                      const GuidanceParams& gp) {
  return U_h * std::sin(pi_v) * (std::cos(beta_tilde - std::atan(y_e / gp.delta_h)) - 1.0);
}

CascadeState cascade_rhs(const CascadeState& xi, double U, double U_h, double pi_v,
                         const GuidanceParams& gp, const TrueCrab& crab) {
  const double scale_v = gp.delta_v / std::hypot(gp.delta_v, xi.z_e);
  const double scale_h = gp.delta_h / std::hypot(gp.delta_h, xi.y_e);
  const double alpha_hat = crab.alpha_c - xi.alpha_tilde;
  const double beta_hat = crab.beta_c - xi.beta_tilde;

  CascadeState d;
  d.z_e = -U * scale_v *
              (std::cos(xi.alpha_tilde) * xi.z_e / gp.delta_v - std::sin(xi.alpha_tilde)) +
          perturbation_g(xi.y_e, xi.beta_tilde, U_h, pi_v, gp);
  d.alpha_tilde = -gp.k_v * scale_v * projection(alpha_hat, xi.z_e, gp);
  d.y_e = -U_h * scale_h *
          (std::cos(xi.beta_tilde) * xi.y_e / gp.delta_h - std::sin(xi.beta_tilde));
  d.beta_tilde = -gp.k_h * scale_h * projection(beta_hat, xi.y_e, gp);
  return d;
}

std::vector<CascadeSample> simulate_cascade(const CascadeState& xi0, const CascadeSimOptions& opts,
                                            const GuidanceParams& gp) {
  gp.validate();
  if (!(opts.dt > 0.0) || !(opts.duration >= 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "cascade: dt must be > 0 and duration >= 0");
  }
  auto rhs = [&](double, const StateArray<4>& x) {
    const CascadeState xi{x[0], x[1], x[2], x[3]};
    double U_h = opts.horizontal_speed;
    if (opts.mode == HorizontalSpeedMode::kCoupled) {
      const double gamma = opts.pi_v - xi.alpha_tilde + std::atan(xi.z_e / gp.delta_v);
      U_h = opts.speed * std::cos(gamma);
    }
    const double pi_v = opts.include_perturbation ? opts.pi_v : 0.0;
    const CascadeState d = cascade_rhs(xi, opts.speed, U_h, pi_v, gp, opts.crab);
    return StateArray<4>{d.z_e, d.alpha_tilde, d.y_e, d.beta_tilde};
  };

  const auto steps = static_cast<std::size_t>(std::llround(opts.duration / opts.dt));
  std::vector<CascadeSample> out;
  out.reserve(steps + 1);
  StateArray<4> x{xi0.z_e, xi0.alpha_tilde, xi0.y_e, xi0.beta_tilde};
  out.push_back({0.0, xi0});
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * opts.dt;
    x = rk4_step<4>(rhs, t, x, opts.dt);
    out.push_back({static_cast<double>(k + 1) * opts.dt, {x[0], x[1], x[2], x[3]}});
  }
  return out;
}

}  // namespace alos
