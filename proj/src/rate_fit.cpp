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

#include "alos/rate_fit.hpp"

#include <cmath>
#include <sstream>

namespace alos {

RateFit fit_exponential_rate(std::span<const double> t, std::span<const double> norm,
                             const FitOptions& opts) {
  if (t.size() != norm.size() || t.size() < 3) {
    throw Error(ErrorCode::kNoFit, "rate fit: need at least three samples of equal length");
  }
  std::size_t first = t.size();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (norm[i] <= opts.capture_level) {
      first = i;
      break;
    }
  }
  if (first == t.size()) {
    std::ostringstream msg;
    msg << "rate fit: norm never drops to capture level " << opts.capture_level
        << " (final " << norm.back() << ")";
    throw Error(ErrorCode::kNoFit, msg.str());
  }
  std::size_t last = first;
  while (last + 1 < t.size() && norm[last + 1] >= opts.floor) {
    ++last;
  }

  RateFit fit;
  fit.t_start = t[first];
  fit.t_end = t[last];
  fit.samples = last - first + 1;
  if (!(norm[first] > 0.0) || !(norm[last] > 0.0)) {
    throw Error(ErrorCode::kNoFit, "rate fit: zero norm at window edge");
  }
  fit.decades = std::log10(norm[first] / norm[last]);
  if (fit.samples < 3 || !(fit.decades >= opts.min_decades)) {
    std::ostringstream msg;
    msg << "rate fit: signal decays " << fit.decades << " decades over [" << fit.t_start
        << ", " << fit.t_end << "] s, need " << opts.min_decades;
    throw Error(ErrorCode::kNoFit, msg.str());
  }

  double mean_t = 0.0, mean_y = 0.0;
  for (std::size_t i = first; i <= last; ++i) {
    mean_t += t[i];
    mean_y += std::log(norm[i]);
  }
  const double n = static_cast<double>(fit.samples);
  mean_t /= n;
  mean_y /= n;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = first; i <= last; ++i) {
    const double dt = t[i] - mean_t;
    const double dy = std::log(norm[i]) - mean_y;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  const double slope = sty / stt;
  fit.rate = -slope;
  fit.r_squared = syy > 0.0 ? (sty * sty) / (stt * syy) : 1.0;
  fit.mean_rate = std::log(norm.front() / norm[last]) / (t[last] - t.front());
  return fit;
}

double masked_norm(const CascadeState& xi, const FitOptions& opts) {
  CascadeState masked = xi;
  if (!opts.components.z_e) masked.z_e = 0.0;
  if (!opts.components.alpha) masked.alpha_tilde = 0.0;
  if (!opts.components.y_e) masked.y_e = 0.0;
  if (!opts.components.beta) masked.beta_tilde = 0.0;
  return weighted_norm(masked, opts.weights);
}

RateFit fit_exponential_rate(const SimLog& log, const FitOptions& opts) {
  std::vector<double> t, norm;
  t.reserve(log.rows.size());
  norm.reserve(log.rows.size());
  for (const LogRow& row : log.rows) {
    t.push_back(row.t);
    norm.push_back(masked_norm(xi_of(row), opts));
  }
  return fit_exponential_rate(t, norm, opts);
}

RateFit fit_exponential_rate(const std::vector<CascadeSample>& trajectory,
                             const FitOptions& opts) {
  std::vector<double> t, norm;
  t.reserve(trajectory.size());
  norm.reserve(trajectory.size());
  for (const CascadeSample& s : trajectory) {
    t.push_back(s.t);
    norm.push_back(masked_norm(s.xi, opts));
  }
  return fit_exponential_rate(t, norm, opts);
}

}  // namespace alos
