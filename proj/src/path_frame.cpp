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

#include "alos/path_frame.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace alos {

Matrix3 SegmentGeometry::frame() const { return rot_z(pi_h) * rot_y(pi_v); }

NedVector SegmentGeometry::direction() const {
  const double cv = std::cos(pi_v);
  return {cv * std::cos(pi_h), cv * std::sin(pi_h), -std::sin(pi_v)};
}

SegmentGeometry segment_geometry(const Waypoint& from, const Waypoint& to) {
  if (!from.position.allFinite() || !to.position.allFinite()) {
    throw Error(ErrorCode::kDomain, "waypoint is not finite");
  }
  const NedVector delta = to.position - from.position;
  SegmentGeometry seg;
  seg.origin = from.position;
  seg.length = delta.norm();
  if (seg.length <= kDefaultTolerance) {
    throw Error(ErrorCode::kDegenerateSegment, "coincident waypoints");
  }
  const double horizontal = std::hypot(delta.x(), delta.y());
  seg.pi_v = std::atan2(-delta.z(), horizontal);
  if (std::abs(seg.pi_v) >= std::numbers::pi / 2.0 - kSegmentElevationMargin) {
    throw Error(ErrorCode::kDegenerateSegment,
                "vertical segment: path azimuth undefined (|pi_v| = pi/2)");
  }
  seg.pi_h = ssa(std::atan2(delta.y(), delta.x()));
  return seg;
}

std::vector<SegmentGeometry> polyline_segments(const std::vector<Waypoint>& waypoints) {
  if (waypoints.size() < 2) {
    throw Error(ErrorCode::kDegenerateSegment, "a path needs at least two waypoints");
  }
  std::vector<SegmentGeometry> segments;
  segments.reserve(waypoints.size() - 1);
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    try {
      segments.push_back(segment_geometry(waypoints[i], waypoints[i + 1]));
    } catch (const Error& e) {
      throw Error(e.code(), "segment " + std::to_string(i) + ": " + e.what());
    }
  }
  return segments;
}

TrackingError tracking_errors(const SegmentGeometry& seg, const NedVector& p) {
  const NedVector e = rot_y(seg.pi_v).transpose() * rot_z(seg.pi_h).transpose() * (p - seg.origin);
  return {e.x(), e.y(), e.z()};
}

NedVector position_from_errors(const SegmentGeometry& seg, const TrackingError& err) {
  return seg.origin + seg.frame() * NedVector(err.x_e, err.y_e, err.z_e);
}

bool switch_segment(const SegmentGeometry& seg, const TrackingError& err, double radius) {
  if (!(radius > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "switch radius must be > 0");
  }
  return err.x_e > seg.length - radius;
}

ErrorRates spherical_error_rates(const EulerAngles& att, const CrabAngles& ca, double pi_h,
                                 double pi_v) {
  const double course_error = att.psi + ca.beta_c - pi_h;
  ErrorRates r;
  r.y_e_dot = ca.speed_horizontal * std::sin(course_error);
  r.z_e_dot = -ca.speed_total * std::sin(att.theta - ca.alpha_c - pi_v) +
              ca.speed_horizontal * std::sin(pi_v) * (std::cos(course_error) - 1.0);
  return r;
}

ErrorRates body_error_rates(const EulerAngles& att, const BodyCrabAngles& bca, double pi_h,
                            double pi_v) {
  const double course_error = att.psi + bca.beta_c_star - pi_h;
  const double secant = std::sqrt(1.0 + std::pow(std::tan(bca.beta_c_star), 2));
  ErrorRates r;
  r.y_e_dot = bca.speed_horizontal_star * std::sin(course_error);
  r.z_e_dot = -bca.speed_vertical_plane * std::sin(att.theta - bca.alpha_c_star - pi_v) +
              bca.speed_horizontal_star * std::sin(pi_v) / secant *
                  (secant * std::cos(course_error) - 1.0);
  return r;
}

}  // namespace alos
