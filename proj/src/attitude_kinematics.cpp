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

#include "alos/attitude_kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace alos {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return "domain error";
    case ErrorCode::kChartSingularity: return "chart singularity";
    case ErrorCode::kDegenerateCourse: return "degenerate course";
    case ErrorCode::kZeroSpeed: return "zero speed";
    case ErrorCode::kNumeric: return "numeric error";
    case ErrorCode::kArctangentDomain: return "arctangent domain error";
    case ErrorCode::kVerticalCrabUndefined: return "vertical crab angle undefined";
    case ErrorCode::kRelationSingularity: return "relation singularity";
    case ErrorCode::kDegenerateSegment: return "degenerate segment";
    case ErrorCode::kPathFrameSingularity: return "path-frame singularity";
    case ErrorCode::kInvalidParameter: return "invalid parameter";
    case ErrorCode::kCommandSaturation: return "command saturation";
    case ErrorCode::kNoFit: return "no fit";
    case ErrorCode::kConfig: return "config error";
  }
  return "unknown error";
}

double ssa(double angle) {
  if (!std::isfinite(angle)) {
    throw Error(ErrorCode::kDomain, "ssa: non-finite angle");
  }
  // Already principal: return unchanged so that ssa is exactly idempotent.
  if (angle >= -kPi && angle < kPi) {
    return angle;
  }
  double r = std::fmod(angle + kPi, kTwoPi);
  if (r < 0.0) {
    r += kTwoPi;
  }
  double out = r - kPi;
  if (out >= kPi) {
    out -= kTwoPi;
  }
  return out;
}

EulerAngles::EulerAngles(double roll, double pitch, double yaw)
    : phi(ssa(roll)), theta(pitch), psi(ssa(yaw)) {}

Matrix3 rot_x(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Matrix3 r;
  r << 1, 0, 0,
       0, c, -s,
       0, s, c;
  return r;
}

Matrix3 rot_y(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Matrix3 r;
  r << c, 0, s,
       0, 1, 0,
       -s, 0, c;
  return r;
}

Matrix3 rot_z(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Matrix3 r;
  r << c, -s, 0,
       s, c, 0,
       0, 0, 1;
  return r;
}

void check_pitch_chart(double theta) {
  if (!std::isfinite(theta)) {
    throw Error(ErrorCode::kDomain, "pitch angle is not finite");
  }
  if (std::abs(theta) >= kPi / 2.0 - kPitchSingularityMargin) {
    throw Error(ErrorCode::kChartSingularity,
                "zyx Euler chart singular: |theta| = " + std::to_string(std::abs(theta)));
  }
}

Matrix3 rotation_body_to_ned(const EulerAngles& att) {
  check_pitch_chart(att.theta);
  if (!std::isfinite(att.phi) || !std::isfinite(att.psi)) {
    throw Error(ErrorCode::kDomain, "Euler angles are not finite");
  }
  const double cphi = std::cos(att.phi), sphi = std::sin(att.phi);
  const double cth = std::cos(att.theta), sth = std::sin(att.theta);
  const double cpsi = std::cos(att.psi), spsi = std::sin(att.psi);

  Matrix3 r;
  r << cpsi * cth, -spsi * cphi + cpsi * sth * sphi, spsi * sphi + cpsi * cphi * sth,
       spsi * cth, cpsi * cphi + sphi * sth * spsi, -cpsi * sphi + sth * spsi * cphi,
       -sth, cth * sphi, cth * cphi;
  return r;
}

NedVector ned_velocity(const EulerAngles& att, const BodyVelocity& vb) {
  return rotation_body_to_ned(att) * vb.vector();
}

SphericalVelocity spherical_velocity(const NedVector& vn, double tol) {
  if (!vn.allFinite()) {
    throw Error(ErrorCode::kDomain, "velocity is not finite");
  }
  SphericalVelocity sv;
  sv.speed_total = vn.norm();
  if (sv.speed_total <= tol) {
    throw Error(ErrorCode::kZeroSpeed, "spherical velocity: zero speed");
  }
  sv.speed_horizontal = std::hypot(vn.x(), vn.y());
  if (sv.speed_horizontal <= tol) {
    throw Error(ErrorCode::kDegenerateCourse,
                "spherical velocity: zero horizontal speed, course undefined");
  }
  sv.course = ssa(std::atan2(vn.y(), vn.x()));
  sv.flight_path = std::asin(std::clamp(-vn.z() / sv.speed_total, -1.0, 1.0));
  return sv;
}

NedVector ned_from_spherical(const SphericalVelocity& sv) {
  const double cg = std::cos(sv.flight_path);
  return sv.speed_total *
         NedVector(cg * std::cos(sv.course), cg * std::sin(sv.course), -std::sin(sv.flight_path));
}

}  // namespace alos
