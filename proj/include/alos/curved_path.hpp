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
/// \brief Regular parametrized curved paths and the moving PATH frame.
///
/// A curve supplies its position p(w), the tangent azimuth/elevation
/// (pi_h(w), pi_v(w)), |p'(w)| and the angle derivatives with respect to the
/// path parameter w, all in closed form. The frame {p}(w) = R_z(pi_h) R_y(pi_v)
/// keeps a horizontal y-axis; its angular velocity expressed in {p} is
///
///   omega = (-sin(pi_v) pi_h_dot, pi_v_dot, cos(pi_v) pi_h_dot).
///
/// The parameter rate is chosen so that the along-track error stays constant
/// (zero when started at zero):
///
///   w_dot = (R^T pdot)_x / (|p'| + omega'_y z_e - omega'_z y_e)
///
/// where omega' is omega per unit w.

#ifndef ALOS_CURVED_PATH_HPP_
#define ALOS_CURVED_PATH_HPP_

#include <limits>
#include <memory>

#include "alos/path_frame.hpp"

namespace alos {

struct PathPoint {
  NedVector position = NedVector::Zero();
  double tangent_norm = 1.0;  // |p'(w)|
  double pi_h = 0.0;
  double pi_v = 0.0;
  double dpi_h = 0.0;  // d(pi_h)/dw
  double dpi_v = 0.0;  // d(pi_v)/dw

  /// Tangent line at this point, as a straight segment of unbounded length.
  SegmentGeometry tangent_segment() const;
};

class CurvedPath {
 public:
  virtual ~CurvedPath() = default;

  virtual PathPoint evaluate(double varpi) const = 0;

  /// Largest valid path parameter; the parameter starts at 0.
  virtual double varpi_max() const { return std::numeric_limits<double>::infinity(); }
};

/// Straight line parametrized by arc length.
class StraightPath final : public CurvedPath {
 public:
  StraightPath(const NedVector& origin, double pi_h, double pi_v);
  PathPoint evaluate(double varpi) const override;

 private:
  NedVector origin_;
  double pi_h_;
  double pi_v_;
};

/// Helix about a vertical axis, parametrized by the winding angle. With zero
/// climb it is a horizontal circle. direction = +1 winds clockwise seen from
/// above (north towards east), -1 counter-clockwise. Positive climb rises
/// (z decreases).
class HelixPath final : public CurvedPath {
 public:
  HelixPath(const NedVector& center, double radius, double climb_per_turn, int direction,
            double start_angle = 0.0);
  PathPoint evaluate(double varpi) const override;

  double curvature() const;

 private:
  NedVector center_;
  double radius_;
  double climb_per_radian_;
  int direction_;
  double start_angle_;
};

/// Circular arc in the vertical plane with azimuth `azimuth`. The path
/// parameter is the arc angle; the tangent elevation runs linearly from
/// start_elevation to end_elevation (both inside (-pi/2, pi/2)).
class VerticalArcPath final : public CurvedPath {
 public:
  VerticalArcPath(const NedVector& start, double radius, double azimuth, double start_elevation,
                  double end_elevation);
  PathPoint evaluate(double varpi) const override;
  double varpi_max() const override;

 private:
  NedVector center_;
  double radius_;
  double azimuth_;
  double start_elevation_;
  double sweep_;
  int direction_;
};

struct PathFrameRates {
  double omega_x = 0.0;
  double omega_y = 0.0;
  double omega_z = 0.0;
  double varpi_dot = 0.0;
};

struct CurvedFrameState {
  PathPoint point;
  TrackingError error;
  PathFrameRates rates;
};

/// Frame angular velocity per unit path parameter at a path point.
Eigen::Vector3d frame_rate_per_varpi(const PathPoint& point);

/// Errors against the frame at `varpi`, the x_e-preserving parameter rate and
/// the resulting frame angular velocity. Throws Error(kPathFrameSingularity)
/// when the rate denominator, relative to |p'|, is below 1e-6.
CurvedFrameState curved_errors_and_rates(const CurvedPath& path, double varpi, const NedVector& p,
                                         const NedVector& vn);

/// Cross/vertical-track error rates on a curved path with x_e = 0:
///   ydot = U_h sin(psi + beta_c - pi_h) + omega_x z_e
///   zdot = -U sin(theta - alpha_c - pi_v) - omega_x y_e
///          + U_h sin(pi_v)(cos(psi + beta_c - pi_h) - 1)
ErrorRates curved_error_rates(const EulerAngles& att, const CrabAngles& ca,
                              const CurvedFrameState& frame);

/// Newton iteration on x_e(w) = 0 starting from `guess`.
double project_onto_path(const CurvedPath& path, const NedVector& p, double guess,
                         int max_iterations = 50);

}  // namespace alos

#endif  // ALOS_CURVED_PATH_HPP_
