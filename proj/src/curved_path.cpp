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

#include "alos/curved_path.hpp"

#include <cmath>
#include <numbers>

namespace alos {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kRateSingularity = 1e-6;

}  // namespace

SegmentGeometry PathPoint::tangent_segment() const {
  SegmentGeometry seg;
  seg.origin = position;
  seg.pi_h = pi_h;
  seg.pi_v = pi_v;
  seg.length = std::numeric_limits<double>::infinity();
  return seg;
}

StraightPath::StraightPath(const NedVector& origin, double pi_h, double pi_v)
    : origin_(origin), pi_h_(ssa(pi_h)), pi_v_(pi_v) {
  if (!origin.allFinite() || !(std::abs(pi_v) < kHalfPi - kSegmentElevationMargin)) {
    throw Error(ErrorCode::kDegenerateSegment, "straight path: invalid origin or elevation");
  }
}

PathPoint StraightPath::evaluate(double varpi) const {
  PathPoint pt;
  pt.pi_h = pi_h_;
  pt.pi_v = pi_v_;
  pt.tangent_norm = 1.0;
  pt.position = origin_ + varpi * pt.tangent_segment().direction();
  return pt;
}

HelixPath::HelixPath(const NedVector& center, double radius, double climb_per_turn, int direction,
                     double start_angle)
    : center_(center),
      radius_(radius),
      climb_per_radian_(climb_per_turn / (2.0 * std::numbers::pi)),
      direction_(direction),
      start_angle_(start_angle) {
  if (!(radius > 0.0) || !std::isfinite(radius) || !std::isfinite(climb_per_turn)) {
    throw Error(ErrorCode::kInvalidParameter, "helix: radius must be > 0 and finite");
  }
  if (direction != 1 && direction != -1) {
    throw Error(ErrorCode::kInvalidParameter, "helix: direction must be +1 or -1");
  }
  if (!center.allFinite()) {
    throw Error(ErrorCode::kDomain, "helix: center is not finite");
  }
}

PathPoint HelixPath::evaluate(double varpi) const {
  const double angle = start_angle_ + direction_ * varpi;
  PathPoint pt;
  pt.position = center_ + NedVector(radius_ * std::cos(angle), radius_ * std::sin(angle),
                                    -climb_per_radian_ * varpi);
  pt.tangent_norm = std::hypot(radius_, climb_per_radian_);
  pt.pi_h = ssa(angle + direction_ * kHalfPi);
  pt.pi_v = std::atan2(climb_per_radian_, radius_);
  pt.dpi_h = direction_;
  pt.dpi_v = 0.0;
  return pt;
}

double HelixPath::curvature() const {
  return radius_ / (radius_ * radius_ + climb_per_radian_ * climb_per_radian_);
}

VerticalArcPath::VerticalArcPath(const NedVector& start, double radius, double azimuth,
                                 double start_elevation, double end_elevation)
    : radius_(radius),
      azimuth_(ssa(azimuth)),
      start_elevation_(start_elevation),
      sweep_(std::abs(end_elevation - start_elevation)),
      direction_(end_elevation >= start_elevation ? 1 : -1) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::kInvalidParameter, "vertical arc: radius must be > 0 and finite");
  }
  const double limit = kHalfPi - kSegmentElevationMargin;
  if (!(std::abs(start_elevation) < limit) || !(std::abs(end_elevation) < limit)) {
    throw Error(ErrorCode::kInvalidParameter,
                "vertical arc: elevations must be inside (-pi/2, pi/2)");
  }
  if (!(sweep_ > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "vertical arc: zero sweep");
  }
  if (!start.allFinite()) {
    throw Error(ErrorCode::kDomain, "vertical arc: start is not finite");
  }
  // p(w) = center + (R/s)(sin(e) h - cos(e) up), e = e0 + s w, up = -z.
  const NedVector h(std::cos(azimuth_), std::sin(azimuth_), 0.0);
  const NedVector up(0.0, 0.0, -1.0);
  center_ = start - (radius_ / direction_) *
                        (std::sin(start_elevation) * h - std::cos(start_elevation) * up);
}

PathPoint VerticalArcPath::evaluate(double varpi) const {
  const double e = start_elevation_ + direction_ * varpi;
  const NedVector h(std::cos(azimuth_), std::sin(azimuth_), 0.0);
  const NedVector up(0.0, 0.0, -1.0);
  PathPoint pt;
  pt.position = center_ + (radius_ / direction_) * (std::sin(e) * h - std::cos(e) * up);
  pt.tangent_norm = radius_;
  pt.pi_h = azimuth_;
  pt.pi_v = e;
  pt.dpi_h = 0.0;
  pt.dpi_v = direction_;
  return pt;
}

double VerticalArcPath::varpi_max() const { return sweep_; }

Eigen::Vector3d frame_rate_per_varpi(const PathPoint& point) {
  return {-std::sin(point.pi_v) * point.dpi_h, point.dpi_v, std::cos(point.pi_v) * point.dpi_h};
}

CurvedFrameState curved_errors_and_rates(const CurvedPath& path, double varpi, const NedVector& p,
                                         const NedVector& vn) {
  CurvedFrameState out;
  out.point = path.evaluate(varpi);
  if (!(out.point.tangent_norm > 0.0)) {
    throw Error(ErrorCode::kPathFrameSingularity, "irregular path: |p'| = 0");
  }
  const SegmentGeometry local = out.point.tangent_segment();
  out.error = tracking_errors(local, p);

  const Eigen::Vector3d omega_unit = frame_rate_per_varpi(out.point);
  const double denominator =
      out.point.tangent_norm + omega_unit.y() * out.error.z_e - omega_unit.z() * out.error.y_e;
  if (!(denominator / out.point.tangent_norm > kRateSingularity)) {
    throw Error(ErrorCode::kPathFrameSingularity,
                "path-parameter rate singular: vehicle too far from path");
  }
  const double tangential =
      (rot_y(local.pi_v).transpose() * rot_z(local.pi_h).transpose() * vn).x();
  out.rates.varpi_dot = tangential / denominator;
  const Eigen::Vector3d omega = omega_unit * out.rates.varpi_dot;
  out.rates.omega_x = omega.x();
  out.rates.omega_y = omega.y();
  out.rates.omega_z = omega.z();
  return out;
}

ErrorRates curved_error_rates(const EulerAngles& att, const CrabAngles& ca,
                              const CurvedFrameState& frame) {
  ErrorRates r = spherical_error_rates(att, ca, frame.point.pi_h, frame.point.pi_v);
  r.y_e_dot += frame.rates.omega_x * frame.error.z_e;
  r.z_e_dot -= frame.rates.omega_x * frame.error.y_e;
  return r;
}

double project_onto_path(const CurvedPath& path, const NedVector& p, double guess,
                         int max_iterations) {
  double varpi = guess;
  for (int i = 0; i < max_iterations; ++i) {
    const PathPoint pt = path.evaluate(varpi);
    const TrackingError err = tracking_errors(pt.tangent_segment(), p);
    const Eigen::Vector3d omega_unit = frame_rate_per_varpi(pt);
    const double slope = -pt.tangent_norm - omega_unit.y() * err.z_e + omega_unit.z() * err.y_e;
    if (!(std::abs(slope) > kRateSingularity * pt.tangent_norm)) {
      throw Error(ErrorCode::kPathFrameSingularity, "projection onto path is singular");
    }
    const double step = err.x_e / slope;
    varpi -= step;
    if (std::abs(step) * pt.tangent_norm < 1e-12 * (1.0 + p.norm())) {
      return varpi;
    }
  }
  return varpi;
}

}  // namespace alos
