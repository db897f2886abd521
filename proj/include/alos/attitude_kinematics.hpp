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
/// \brief Euler-angle kinematics: the zyx body-to-NED rotation, smallest
/// signed angle normalization and azimuth/elevation of velocity vectors.

#ifndef ALOS_ATTITUDE_KINEMATICS_HPP_
#define ALOS_ATTITUDE_KINEMATICS_HPP_

#include <Eigen/Core>

#include "alos/error.hpp"

namespace alos {

/// North-East-Down vector; a position in m or a velocity in m/s.
using NedVector = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

/// Pitch closer than this to +-pi/2 is rejected by the zyx chart.
inline constexpr double kPitchSingularityMargin = 1e-6;

/// Smallest signed angle, mod(x + pi, 2 pi) - pi, in [-pi, pi).
/// Throws Error(kDomain) for non-finite input.
double ssa(double angle);

/// zyx Euler angles. Roll and yaw are normalized to [-pi, pi) on
/// construction; pitch is stored as given and checked by each operation that
/// needs the chart.
struct EulerAngles {
  double phi = 0.0;
  double theta = 0.0;
  double psi = 0.0;

  EulerAngles() = default;
  EulerAngles(double roll, double pitch, double yaw);
};

/// Linear velocity in BODY: surge, sway, heave.
struct BodyVelocity {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;

  Eigen::Vector3d vector() const { return {u, v, w}; }
  double speed() const { return vector().norm(); }
  static BodyVelocity from(const Eigen::Vector3d& vb) { return {vb.x(), vb.y(), vb.z()}; }
};

/// Velocity vector in spherical coordinates: speed U, horizontal speed U_h,
/// course chi and flight-path angle gamma.
struct SphericalVelocity {
  double speed_total = 0.0;
  double speed_horizontal = 0.0;
  double course = 0.0;
  double flight_path = 0.0;
};

Matrix3 rot_x(double angle);
Matrix3 rot_y(double angle);
Matrix3 rot_z(double angle);

/// Throws Error(kChartSingularity) when |theta| >= pi/2 - kPitchSingularityMargin,
/// Error(kDomain) when theta is not finite.
void check_pitch_chart(double theta);

/// R_b^n for zyx Euler angles, written out entry by entry.
Matrix3 rotation_body_to_ned(const EulerAngles& att);

/// pdot^n = R_b^n v^b.
NedVector ned_velocity(const EulerAngles& att, const BodyVelocity& vb);

/// Speed, horizontal speed, course and flight-path angle of a NED velocity.
/// Throws Error(kZeroSpeed) for U <= tol and Error(kDegenerateCourse) for
/// U_h <= tol (vertical flight).
SphericalVelocity spherical_velocity(const NedVector& vn, double tol = kDefaultTolerance);

/// U [cos(gamma) cos(chi), cos(gamma) sin(chi), -sin(gamma)].
NedVector ned_from_spherical(const SphericalVelocity& sv);

}  // namespace alos

#endif  // ALOS_ATTITUDE_KINEMATICS_HPP_
