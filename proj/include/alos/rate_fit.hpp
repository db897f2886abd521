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
/// \brief Exponential decay-rate estimation from trajectories.

#ifndef ALOS_RATE_FIT_HPP_
#define ALOS_RATE_FIT_HPP_

#include <span>
#include <vector>

#include "alos/cascade.hpp"
#include "alos/closed_loop_sim.hpp"

namespace alos {

/// Which xi components enter the norm.
struct ComponentMask {
  bool z_e = true;
  bool alpha = true;
  bool y_e = true;
  bool beta = true;
};

struct FitOptions {
  XiWeights weights;
  ComponentMask components;
  /// Window opens at the first sample with norm <= capture_level.
  double capture_level = 1.0;
  /// Window closes before the norm first drops below floor.
  double floor = 1e-8;
  /// Required decay across the window, in decades.
  double min_decades = 2.0;
};

struct RateFit {
  double rate = 0.0;       // 1/s, minus the slope of ln|xi|
  double r_squared = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;
  std::size_t samples = 0;
  double decades = 0.0;    // log10 decay across the window
  double mean_rate = 0.0;  // ln(|xi(0)| / |xi(t_end)|) / (t_end - t0) over the whole series
};

/// Least-squares slope of ln(norm) over the decay window. Throws
/// Error(kNoFit) when the signal never enters the window or decays less
/// than min_decades.
RateFit fit_exponential_rate(std::span<const double> t, std::span<const double> norm,
                             const FitOptions& opts = {});

double masked_norm(const CascadeState& xi, const FitOptions& opts);

RateFit fit_exponential_rate(const SimLog& log, const FitOptions& opts);

RateFit fit_exponential_rate(const std::vector<CascadeSample>& trajectory, const FitOptions& opts);

}  // namespace alos

#endif  // ALOS_RATE_FIT_HPP_
