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

#include "alos/scenario_io.hpp"

#include <fstream>
#include <set>

namespace alos {

namespace {

using nlohmann::json;

// Reads keys from one object and rejects any it did not consume.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) {
      throw Error(ErrorCode::kConfig, path_ + ": expected an object");
    }
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  std::string key_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    used_.insert(key);
    const json& v = node_.at(key);
    if (!v.is_number()) {
      throw Error(ErrorCode::kConfig, key_path(key) + ": expected a number");
    }
    return v.get<double>();
  }

  double required_number(const std::string& key) {
    if (!has(key)) {
      throw Error(ErrorCode::kConfig, key_path(key) + ": missing");
    }
    return number(key, 0.0);
  }

  std::string string(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    used_.insert(key);
    const json& v = node_.at(key);
    if (!v.is_string()) {
      throw Error(ErrorCode::kConfig, key_path(key) + ": expected a string");
    }
    return v.get<std::string>();
  }

  NedVector vector3(const std::string& key, const NedVector& fallback) {
    if (!has(key)) return fallback;
    used_.insert(key);
    return to_vector3(node_.at(key), key_path(key));
  }

  NedVector required_vector3(const std::string& key) {
    if (!has(key)) {
      throw Error(ErrorCode::kConfig, key_path(key) + ": missing");
    }
    return vector3(key, NedVector::Zero());
  }

  const json& raw(const std::string& key) {
    used_.insert(key);
    return node_.at(key);
  }

  Section child(const std::string& key) {
    used_.insert(key);
    return Section(node_.at(key), key_path(key));
  }

  static NedVector to_vector3(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 3) {
      throw Error(ErrorCode::kConfig, where + ": expected [x, y, z]");
    }
    NedVector out;
    for (int i = 0; i < 3; ++i) {
      if (!v[i].is_number()) {
        throw Error(ErrorCode::kConfig, where + ": expected numbers");
      }
      out[i] = v[i].get<double>();
    }
    return out;
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!used_.count(it.key())) {
        throw Error(ErrorCode::kConfig, key_path(it.key()) + ": unknown key");
      }
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> used_;
};

int direction_of(Section& s) {
  const double d = s.number("direction", 1.0);
  if (d != 1.0 && d != -1.0) {
    throw Error(ErrorCode::kConfig, s.key_path("direction") + ": must be +1 or -1");
  }
  return static_cast<int>(d);
}

PathDefinition parse_path(Section s) {
  const std::string type = s.string("type", "waypoints");
  PathDefinition out;
  try {
    if (type == "waypoints") {
      PolylinePath poly;
      if (!s.has("waypoints")) {
        throw Error(ErrorCode::kConfig, s.key_path("waypoints") + ": missing");
      }
      const json& list = s.raw("waypoints");
      if (!list.is_array()) {
        throw Error(ErrorCode::kConfig, s.key_path("waypoints") + ": expected a list");
      }
      for (std::size_t i = 0; i < list.size(); ++i) {
        poly.waypoints.push_back(
            {Section::to_vector3(list[i], s.key_path("waypoints") + "[" + std::to_string(i) + "]")});
      }
      poly.switch_radius = s.number("switch_radius", 0.0);
      out = poly;
    } else if (type == "straight") {
      out = std::make_shared<StraightPath>(s.vector3("origin", NedVector::Zero()),
                                           s.number("azimuth", 0.0), s.number("elevation", 0.0));
    } else if (type == "horizontal_circle") {
      const NedVector center = s.vector3("center", NedVector::Zero());
      const double radius = s.required_number("radius");
      const int dir = direction_of(s);
      out = std::make_shared<HelixPath>(center, radius, 0.0, dir, s.number("start_angle", 0.0));
    } else if (type == "helix") {
      const NedVector center = s.vector3("center", NedVector::Zero());
      const double radius = s.required_number("radius");
      const double pitch = s.required_number("pitch_per_turn");
      const int dir = direction_of(s);
      out = std::make_shared<HelixPath>(center, radius, pitch, dir, s.number("start_angle", 0.0));
    } else if (type == "vertical_arc") {
      const NedVector start = s.vector3("start", NedVector::Zero());
      const double radius = s.required_number("radius");
      const double azimuth = s.number("azimuth", 0.0);
      const double e0 = s.required_number("start_elevation");
      const double e1 = s.required_number("end_elevation");
      out = std::make_shared<VerticalArcPath>(start, radius, azimuth, e0, e1);
    } else {
      throw Error(ErrorCode::kConfig, s.key_path("type") + ": unknown path type '" + type + "'");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfig) throw;
    throw Error(ErrorCode::kConfig, "path: " + std::string(e.what()));
  }
  s.finish();
  return out;
}

}  // namespace

ScenarioConfig parse_scenario(const json& doc) {
  Section root(doc, "");
  ScenarioConfig cfg;
  if (!root.has("path")) {
    throw Error(ErrorCode::kConfig, "path: missing");
  }
  cfg.path = parse_path(root.child("path"));

  if (root.has("current")) {
    Section s = root.child("current");
    cfg.current.velocity = s.vector3("velocity", cfg.current.velocity);
    cfg.current.ramp = s.vector3("ramp", cfg.current.ramp);
    s.finish();
  }

  if (root.has("vehicle")) {
    Section s = root.child("vehicle");
    cfg.vehicle.relative_velocity =
        BodyVelocity::from(s.vector3("relative_velocity", cfg.vehicle.relative_velocity.vector()));
    if (s.has("speed_profile")) {
      Section sp = s.child("speed_profile");
      cfg.vehicle.speed_min = sp.required_number("min");
      cfg.vehicle.speed_max = sp.required_number("max");
      cfg.vehicle.speed_period = sp.required_number("period");
      if (!(cfg.vehicle.speed_period > 0.0)) {
        throw Error(ErrorCode::kConfig, "vehicle.speed_profile.period: must be > 0");
      }
      sp.finish();
    }
    if (s.has("roll")) {
      Section r = s.child("roll");
      cfg.vehicle.roll.offset = r.number("offset", 0.0);
      cfg.vehicle.roll.amplitude = r.number("amplitude", 0.0);
      cfg.vehicle.roll.period = r.number("period", 0.0);
      r.finish();
    }
    if (s.has("autopilot")) {
      Section a = s.child("autopilot");
      const std::string mode = a.string("mode", "perfect");
      if (mode == "perfect") {
        cfg.vehicle.autopilot.mode = AutopilotModel::Mode::kPerfect;
      } else if (mode == "lag") {
        cfg.vehicle.autopilot.mode = AutopilotModel::Mode::kFirstOrderLag;
      } else {
        throw Error(ErrorCode::kConfig, "vehicle.autopilot.mode: expected 'perfect' or 'lag'");
      }
      cfg.vehicle.autopilot.time_constant = a.number("time_constant", 1.0);
      a.finish();
    }
    s.finish();
  }

  if (root.has("guidance")) {
    Section s = root.child("guidance");
    GuidanceParams& g = cfg.guidance;
    g.delta_h = s.number("delta_h", g.delta_h);
    g.delta_v = s.number("delta_v", g.delta_v);
    g.k_h = s.number("k_h", g.k_h);
    g.k_v = s.number("k_v", g.k_v);
    g.proj_bound = s.number("proj_bound", g.proj_bound);
    g.proj_layer = s.number("proj_layer", g.proj_layer);
    s.finish();
  }

  if (root.has("initial")) {
    Section s = root.child("initial");
    const NedVector off = s.vector3("offset", NedVector::Zero());
    cfg.initial.offset = {off.x(), off.y(), off.z()};
    cfg.initial.estimate.alpha_hat = s.number("alpha_hat", 0.0);
    cfg.initial.estimate.beta_hat = s.number("beta_hat", 0.0);
    if (s.has("psi")) cfg.initial.psi = s.number("psi", 0.0);
    if (s.has("theta")) cfg.initial.theta = s.number("theta", 0.0);
    s.finish();
  }

  if (root.has("sim")) {
    Section s = root.child("sim");
    cfg.sim.dt = s.number("dt", cfg.sim.dt);
    cfg.sim.duration = s.number("duration", cfg.sim.duration);
    cfg.sim.saturation_abort_time = s.number("saturation_abort_time", cfg.sim.saturation_abort_time);
    cfg.sim.convergence_tolerance = s.number("convergence_tolerance", cfg.sim.convergence_tolerance);
    const double interval = s.number("log_interval", 1.0);
    if (!(interval >= 1.0) || interval != static_cast<double>(static_cast<long long>(interval))) {
      throw Error(ErrorCode::kConfig, "sim.log_interval: must be an integer >= 1");
    }
    cfg.sim.log_interval = static_cast<std::size_t>(interval);
    const double seed = s.number("seed", 1.0);
    if (!(seed >= 0.0) || seed != static_cast<double>(static_cast<long long>(seed))) {
      throw Error(ErrorCode::kConfig, "sim.seed: must be a non-negative integer");
    }
    cfg.seed = static_cast<std::uint64_t>(seed);
    s.finish();
  }

  if (root.has("output")) {
    Section s = root.child("output");
    cfg.output.csv_path = s.string("csv", "");
    const double dec = s.number("decimation", 1.0);
    if (!(dec >= 1.0) || dec != static_cast<double>(static_cast<long long>(dec))) {
      throw Error(ErrorCode::kConfig, "output.decimation: must be an integer >= 1");
    }
    cfg.output.decimation = static_cast<std::size_t>(dec);
    s.finish();
  }

  root.finish();
  cfg.validate();
  return cfg;
}

json read_scenario_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw Error(ErrorCode::kConfig, "cannot read config file '" + file.string() + "'");
  }
  try {
    return json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfig, "config parse error: " + std::string(e.what()));
  }
}

ScenarioConfig load_scenario(const std::filesystem::path& file) {
  return parse_scenario(read_scenario_json(file));
}

}  // namespace alos
