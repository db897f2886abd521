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
/// \brief Scenario files: JSON with one section per module.
///
///   {
///     "path":     {"type": "waypoints", "waypoints": [[x, y, z], ...], "switch_radius": 40},
///     "current":  {"velocity": [n, e, d], "ramp": [n, e, d]},
///     "vehicle":  {"relative_velocity": [u, v, w],
///                  "speed_profile": {"min": .., "max": .., "period": ..},
///                  "roll": {"offset": .., "amplitude": .., "period": ..},
///                  "autopilot": {"mode": "perfect" | "lag", "time_constant": 1.0}},
///     "guidance": {"delta_h", "delta_v", "k_h", "k_v", "proj_bound", "proj_layer"},
///     "initial":  {"offset": [x_e, y_e, z_e], "alpha_hat", "beta_hat", "psi", "theta"},
///     "sim":      {"dt", "duration", "saturation_abort_time", "convergence_tolerance",
///                  "log_interval", "seed"},
///     "output":   {"csv": "run.csv", "decimation": 1}
///   }
///
/// Curved path types: "straight" (origin, azimuth, elevation),
/// "horizontal_circle" (center, radius, direction, start_angle),
/// "helix" (center, radius, pitch_per_turn, direction, start_angle),
/// "vertical_arc" (start, radius, azimuth, start_elevation, end_elevation).
/// Angles are radians. Every section and key is optional except "path";
/// unknown keys are errors.

#ifndef ALOS_SCENARIO_IO_HPP_
#define ALOS_SCENARIO_IO_HPP_

#include <filesystem>
#include <string>

#include <json.hpp>

#include "alos/closed_loop_sim.hpp"

namespace alos {

/// Throws Error(kConfig) with the offending key path.
ScenarioConfig parse_scenario(const nlohmann::json& doc);

nlohmann::json read_scenario_json(const std::filesystem::path& file);

ScenarioConfig load_scenario(const std::filesystem::path& file);

}  // namespace alos

#endif  // ALOS_SCENARIO_IO_HPP_
