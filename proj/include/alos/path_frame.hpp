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
/// \brief PATH frame for straight segments: segment geometry, along/cross/
/// vertical-track errors, waypoint switching and the straight-line error
/// dynamics of both amplitude-phase models.
///
/// {p} is built by a rotation pi_h about the NED z-axis followed by a
/// rotation pi_v about the resulting y-axis, so the segment direction is
/// {p}'s x-axis and pi_v > 0 for an ascending segment (dz < 0).

#ifndef ALOS_PATH_FRAME_HPP_
#define ALOS_PATH_FRAME_HPP_

#include <vector>

#include "alos/amplitude_phase.hpp"
#include "alos/attitude_kinematics.hpp"

namespace alos {

struct Waypoint {
  NedVector position = NedVector::Zero();
};

/// Segment path angles must keep |pi_v| at least this far from pi/2.
inline constexpr double kSegmentElevationMargin = 1e-6;

struct SegmentGeometry {
  NedVector origin = NedVector::Zero();
  double pi_h = 0.0;
  double pi_v = 0.0;
  double length = 0.0;

  /// R_z(pi_h) R_y(pi_v); columns are the {p} axes in NED.
  Matrix3 frame() const;
  NedVector direction() const;
};

struct TrackingError {
  double x_e = 0.0;
  double y_e = 0.0;
  double z_e = 0.0;
};

SegmentGeometry segment_geometry(const Waypoint& from, const Waypoint& to);

/// Segments between consecutive waypoints. Needs at least two waypoints.
std::vector<SegmentGeometry> polyline_segments(const std::vector<Waypoint>& waypoints);

/// e^p = R_y(pi_v)^T R_z(pi_h)^T (p - origin).
TrackingError tracking_errors(const SegmentGeometry& seg, const NedVector& p);

/// Inverse of tracking_errors().
NedVector position_from_errors(const SegmentGeometry& seg, const TrackingError& err);

/// Sphere-of-acceptance on along-track progress: x_e > length - radius.
bool switch_segment(const SegmentGeometry& seg, const TrackingError& err, double radius);

struct ErrorRates {
  double y_e_dot = 0.0;
  double z_e_dot = 0.0;
};

/// Straight-line cross/vertical-track error rates in spherical form:
///   ydot = U_h sin(psi + beta_c - pi_h)
///   zdot = -U sin(theta - alpha_c - pi_v) + U_h sin(pi_v)(cos(psi + beta_c - pi_h) - 1)
ErrorRates spherical_error_rates(const EulerAngles& att, const CrabAngles& ca, double pi_h,
                                 double pi_v);

/// Same rates expressed with the body-velocity crab angles.
ErrorRates body_error_rates(const EulerAngles& att, const BodyCrabAngles& bca, double pi_h,
                            double pi_v);

}  // namespace alos

#endif  // ALOS_PATH_FRAME_HPP_
