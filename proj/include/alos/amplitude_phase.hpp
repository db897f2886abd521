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
/// \brief Amplitude-phase decompositions of the NED kinematics.
///
/// Two decompositions are provided. The spherical one uses the course and
/// flight-path angle of the velocity vector:
///
///   beta_c = ssa(chi - psi),   alpha_c = theta - gamma,
///   xdot = U_h cos(psi + beta_c), ydot = U_h sin(psi + beta_c),
///   zdot = -U sin(theta - alpha_c).
///
/// The body-velocity one builds its phase angles from (u, v, w) with
/// single-quadrant arctangents and replaces (U, alpha_c) by (U_v*, alpha_c*).
/// Both reproduce R_b^n v^b; they share beta_c and U_h but not the vertical
/// crab angle. The two vertical angles are related through
/// alpha_star_from_spherical().

#ifndef ALOS_AMPLITUDE_PHASE_HPP_
#define ALOS_AMPLITUDE_PHASE_HPP_

#include "alos/attitude_kinematics.hpp"

namespace alos {

/// asin arguments overshooting [-1, 1] by less than this are clamped.
inline constexpr double kAsinClampTolerance = 1e-12;

/// Spherical crab angles and speeds.
struct CrabAngles {
  double alpha_c = 0.0;           // vertical crab angle, theta - gamma
  double beta_c = 0.0;            // horizontal crab angle, ssa(chi - psi)
  double speed_total = 0.0;       // U
  double speed_horizontal = 0.0;  // U_h
};

/// Body-velocity crab angles and amplitudes.
struct BodyCrabAngles {
  double alpha_c_star = 0.0;
  double beta_c_star = 0.0;
  double speed_vertical_plane = 0.0;   // U_v*
  double speed_horizontal_star = 0.0;  // U_h*
};

CrabAngles spherical_crab_from_angles(const EulerAngles& att, const SphericalVelocity& sv,
                                      double tol = kDefaultTolerance);

/// Closed-form crab angles from body velocity and Euler angles.
CrabAngles spherical_crab_from_body(const EulerAngles& att, const BodyVelocity& vb,
                                    double tol = kDefaultTolerance);

/// Literal body-velocity model. alpha_c* uses atan((v sin phi + w cos phi)/u),
/// so it lives in (-pi/2, pi/2) and needs u != 0; beta_c* is likewise a
/// single-quadrant atan and only matches beta_c when |beta_c| < pi/2.
BodyCrabAngles body_crab_angles(const EulerAngles& att, const BodyVelocity& vb,
                                double tol = kDefaultTolerance);

/// alpha_c* = alpha_c + gamma - atan(tan(gamma) / cos(beta_c)).
/// Throws Error(kRelationSingularity) when |cos(beta_c)| <= tol.
double alpha_star_from_spherical(const CrabAngles& ca, double flight_path,
                                 double tol = kDefaultTolerance);

NedVector spherical_ap_velocity(const EulerAngles& att, const CrabAngles& ca);

NedVector body_ap_velocity(const EulerAngles& att, const BodyCrabAngles& bca);

}  // namespace alos

#endif  // ALOS_AMPLITUDE_PHASE_HPP_
