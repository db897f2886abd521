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

// Programmatic scenario builders shared by unit and acceptance tests.

#ifndef ALOS_TESTS_SUPPORT_SCENARIOS_HPP_
#define ALOS_TESTS_SUPPORT_SCENARIOS_HPP_

#include <cmath>
#include <memory>

#include "alos/closed_loop_sim.hpp"

namespace alos::testing {

/// Single straight segment from the origin with azimuth pi_h and
/// elevation pi_v, long enough for `length` metres of travel.
inline ScenarioConfig straight_config(double pi_h, double pi_v, double length = 1e5) {
  ScenarioConfig cfg;
  const NedVector dir(std::cos(pi_v) * std::cos(pi_h), std::cos(pi_v) * std::sin(pi_h),
                      -std::sin(pi_v));
  cfg.path = PolylinePath{{Waypoint{NedVector::Zero()}, Waypoint{length * dir}}, 0.0};
  return cfg;
}

inline ScenarioConfig curved_config(std::shared_ptr<const CurvedPath> curve) {
  ScenarioConfig cfg;
  cfg.path = std::move(curve);
  return cfg;
}

}  // namespace alos::testing

#endif  // ALOS_TESTS_SUPPORT_SCENARIOS_HPP_
