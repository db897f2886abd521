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

#include "alos/amplitude_phase.hpp"

#include <cmath>
#include <string>

namespace alos {

namespace {

double checked_asin(double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::kDomain, "asin argument is not finite");
  }
  if (x > 1.0) {
    if (x - 1.0 > kAsinClampTolerance) {
      throw Error(ErrorCode::kNumeric, "asin argument " + std::to_string(x) + " > 1");
    }
    x = 1.0;
  } else if (x < -1.0) {
    if (-1.0 - x > kAsinClampTolerance) {
      throw Error(ErrorCode::kNumeric, "asin argument " + std::to_string(x) + " < -1");
    }
    x = -1.0;
  }
  return std::asin(x);
}

}  // namespace

CrabAngles spherical_crab_from_angles(const EulerAngles& att, const SphericalVelocity& sv,
                                      double tol) {
  check_pitch_chart(att.theta);
  if (!(sv.speed_horizontal > tol)) {
    throw Error(ErrorCode::kDegenerateCourse, "crab angles need U_h > 0");
  }
  CrabAngles ca;
  ca.beta_c = ssa(sv.course - att.psi);
  ca.alpha_c = att.theta - sv.flight_path;
  ca.speed_total = sv.speed_total;
  ca.speed_horizontal = sv.speed_horizontal;
  return ca;
}

CrabAngles spherical_crab_from_body(const EulerAngles& att, const BodyVelocity& vb, double tol) {
  check_pitch_chart(att.theta);
  const double speed = vb.speed();
  if (!std::isfinite(speed)) {
    throw Error(ErrorCode::kDomain, "body velocity is not finite");
  }
  if (speed <= tol) {
    throw Error(ErrorCode::kZeroSpeed, "crab angles need U > 0");
  }
  const double cphi = std::cos(att.phi), sphi = std::sin(att.phi);
  const double cth = std::cos(att.theta), sth = std::sin(att.theta);

  // Velocity components in the vertical plane of the body x-axis.
  const double lateral = vb.v * cphi - vb.w * sphi;     // U_h sin(beta_c)
  const double normal = vb.v * sphi + vb.w * cphi;
  const double forward = vb.u * cth + normal * sth;     // U_h cos(beta_c)

  CrabAngles ca;
  ca.speed_total = speed;
  ca.speed_horizontal = std::hypot(forward, lateral);
  if (ca.speed_horizontal <= tol) {
    throw Error(ErrorCode::kDegenerateCourse, "crab angles need U_h > 0");
  }
  ca.alpha_c = att.theta - checked_asin((vb.u * sth - normal * cth) / speed);
  ca.beta_c = ssa(std::atan2(lateral, forward));
  return ca;
}

BodyCrabAngles body_crab_angles(const EulerAngles& att, const BodyVelocity& vb, double tol) {
  check_pitch_chart(att.theta);
  if (!std::isfinite(vb.speed())) {
    throw Error(ErrorCode::kDomain, "body velocity is not finite");
  }
  const double cphi = std::cos(att.phi), sphi = std::sin(att.phi);
  const double normal = vb.v * sphi + vb.w * cphi;
  const double lateral = vb.v * cphi - vb.w * sphi;

  BodyCrabAngles bca;
  bca.speed_vertical_plane = std::hypot(vb.u, normal);
  if (bca.speed_vertical_plane <= tol) {
    throw Error(ErrorCode::kVerticalCrabUndefined, "U_v* = 0, alpha_c* undefined");
  }
  if (std::abs(vb.u) <= tol) {
    throw Error(ErrorCode::kArctangentDomain, "alpha_c* needs u != 0");
  }
  bca.alpha_c_star = std::atan(normal / vb.u);

  const double in_plane = bca.speed_vertical_plane * std::cos(att.theta - bca.alpha_c_star);
  if (std::abs(in_plane) <= tol) {
    throw Error(ErrorCode::kArctangentDomain, "beta_c* needs U_v* cos(theta - alpha_c*) != 0");
  }
  bca.beta_c_star = std::atan(lateral / in_plane);
  bca.speed_horizontal_star = std::hypot(in_plane, lateral);
  return bca;
}

double alpha_star_from_spherical(const CrabAngles& ca, double flight_path, double tol) {
  const double cb = std::cos(ca.beta_c);
  if (std::abs(cb) <= tol) {
    throw Error(ErrorCode::kRelationSingularity,
                "alpha_c* relation singular at |beta_c| = pi/2");
  }
  return ca.alpha_c + flight_path - std::atan(std::tan(flight_path) / cb);
}

NedVector spherical_ap_velocity(const EulerAngles& att, const CrabAngles& ca) {
  const double heading = att.psi + ca.beta_c;
  return {ca.speed_horizontal * std::cos(heading), ca.speed_horizontal * std::sin(heading),
          -ca.speed_total * std::sin(att.theta - ca.alpha_c)};
}

NedVector body_ap_velocity(const EulerAngles& att, const BodyCrabAngles& bca) {
  const double heading = att.psi + bca.beta_c_star;
  return {bca.speed_horizontal_star * std::cos(heading),
          bca.speed_horizontal_star * std::sin(heading),
          -bca.speed_vertical_plane * std::sin(att.theta - bca.alpha_c_star)};
}

}  // namespace alos
