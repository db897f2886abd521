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

#include "alos/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "alos/csv.hpp"
#include "alos/scenario_io.hpp"

namespace alos::cli {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string output_path(const ScenarioConfig& cfg, const Overrides& o, const std::string& fallback) {
  if (o.out) return *o.out;
  if (!cfg.output.csv_path.empty()) return cfg.output.csv_path;
  return fallback;
}

json load_with_overrides(const std::string& config, const Overrides& o) {
  json doc = read_scenario_json(config);
  apply_overrides(doc, o);
  return doc;
}

void print_abort(std::ostream& err, const AbortInfo& a) {
  err << "simulation aborted at step " << a.step << " (t = " << a.t << " s): " << to_string(a.code)
      << ": " << a.message << '\n';
}

ComponentMask parse_components(const std::string& list) {
  ComponentMask m{false, false, false, false};
  std::istringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "z_e") m.z_e = true;
    else if (item == "alpha") m.alpha = true;
    else if (item == "y_e") m.y_e = true;
    else if (item == "beta") m.beta = true;
    else throw Error(ErrorCode::kConfig, "unknown xi component '" + item + "'");
  }
  return m;
}

}  // namespace

void apply_overrides(json& doc, const Overrides& o) {
  if (o.dt) doc["sim"]["dt"] = *o.dt;
  if (o.duration) doc["sim"]["duration"] = *o.duration;
  if (o.seed) doc["sim"]["seed"] = *o.seed;
}

FitOptions default_fit_options(const GuidanceParams& gp) {
  FitOptions f;
  f.weights = XiWeights::from_lookahead(gp);
  return f;
}

RunSummary summarize(const ScenarioConfig& config, const SimLog& log) {
  RunSummary s;
  s.abort = log.abort;
  if (!log.rows.empty()) {
    const LogRow& last = log.rows.back();
    s.final_error = last.error;
    s.final_bias = std::abs(last.alpha_c - last.alpha_hat);
    const double tol = config.sim.convergence_tolerance;
    s.converged = !log.abort && std::abs(last.error.y_e) < tol && std::abs(last.error.z_e) < tol;
  }
  try {
    s.fit = fit_exponential_rate(log, default_fit_options(config.guidance));
  } catch (const Error& e) {
    s.fit_note = e.what();
  }
  return s;
}

std::vector<CompareRow> compare_formulations(const SimLog& log) {
  std::vector<CompareRow> rows;
  rows.reserve(log.rows.size());
  for (const LogRow& r : log.rows) {
    CompareRow c;
    c.t = r.t;
    c.alpha_c = r.alpha_c;
    c.alpha_c_star = r.alpha_c_star;
    c.beta_c = r.beta_c;
    c.gamma = r.gamma;
    c.difference = r.alpha_c_star - r.alpha_c;
    try {
      CrabAngles ca;
      ca.alpha_c = r.alpha_c;
      ca.beta_c = r.beta_c;
      c.predicted = alpha_star_from_spherical(ca, r.gamma) - r.alpha_c;
    } catch (const Error&) {
      c.predicted = kNaN;
    }
    c.residual = c.difference - c.predicted;
    rows.push_back(c);
  }
  return rows;
}

double max_identity_residual(const std::vector<CompareRow>& rows) {
  double worst = 0.0;
  for (const auto& r : rows) {
    if (std::isfinite(r.residual)) worst = std::max(worst, std::abs(r.residual));
  }
  return worst;
}

void write_compare_csv(std::ostream& os, const std::vector<CompareRow>& rows) {
  os << "t,alpha_c,alpha_c_star,beta_c,gamma,difference,predicted_difference,residual\n";
  for (const auto& r : rows) {
    os << format_double(r.t) << ',' << format_double(r.alpha_c) << ','
       << format_double(r.alpha_c_star) << ',' << format_double(r.beta_c) << ','
       << format_double(r.gamma) << ',' << format_double(r.difference) << ','
       << format_double(r.predicted) << ',' << format_double(r.residual) << '\n';
  }
}

json apply_sweep_value(const json& base, const std::string& parameter, double value,
                       std::size_t index) {
  json doc = base;
  const GuidanceParams defaults;
  auto number_at = [&](const json::json_pointer& ptr, double fallback) {
    return doc.contains(ptr) && doc.at(ptr).is_number() ? doc.at(ptr).get<double>() : fallback;
  };

  if (parameter == "radius") {
    const double dh = number_at(json::json_pointer("/guidance/delta_h"), defaults.delta_h);
    const double dv = number_at(json::json_pointer("/guidance/delta_v"), defaults.delta_v);
    const auto seed = static_cast<std::uint64_t>(number_at(json::json_pointer("/sim/seed"), 1.0));
    std::mt19937_64 rng(seed + index);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const double a = angle(rng);
    doc["initial"]["offset"] = {0.0, value * dh * std::cos(a), value * dv * std::sin(a)};
  } else if (parameter == "gain") {
    doc["guidance"]["k_h"] = value;
    doc["guidance"]["k_v"] = value;
  } else if (parameter == "current") {
    NedVector dir(0.0, 1.0, 0.0);
    if (doc.contains("current") && doc["current"].contains("velocity")) {
      const NedVector c = {doc["current"]["velocity"][0].get<double>(),
                           doc["current"]["velocity"][1].get<double>(),
                           doc["current"]["velocity"][2].get<double>()};
      if (c.norm() > 0.0) dir = c.normalized();
    }
    const NedVector c = dir * value;
    doc["current"]["velocity"] = {c.x(), c.y(), c.z()};
  } else if (parameter == "curvature") {
    const std::string type = doc["path"].value("type", "");
    if (type != "helix" && type != "horizontal_circle") {
      throw Error(ErrorCode::kConfig, "curvature sweep needs a helix or horizontal_circle path");
    }
    if (!(value > 0.0)) {
      throw Error(ErrorCode::kConfig, "curvature must be > 0");
    }
    const double b = number_at(json::json_pointer("/path/pitch_per_turn"), 0.0) /
                     (2.0 * std::numbers::pi);
    const double disc = 1.0 - 4.0 * value * value * b * b;
    if (disc < 0.0) {
      throw Error(ErrorCode::kConfig, "curvature not reachable with this pitch per turn");
    }
    doc["path"]["radius"] = (1.0 + std::sqrt(disc)) / (2.0 * value);
  } else if (!parameter.empty() && parameter.front() == '/') {
    doc[json::json_pointer(parameter)] = value;
  } else {
    throw Error(ErrorCode::kConfig, "unknown sweep parameter '" + parameter + "'");
  }
  return doc;
}

std::vector<SweepRow> run_sweep(const json& base, const SweepSpec& spec) {
  auto run_one = [&](std::size_t i) {
    SweepRow row;
    row.index = i;
    row.value = spec.values[i];
    row.rate = kNaN;
    row.r_squared = kNaN;
    row.mean_rate = kNaN;
    row.final_bias = kNaN;
    try {
      const ScenarioConfig cfg = parse_scenario(apply_sweep_value(base, spec.parameter, row.value, i));
      const SimLog log = run_scenario(cfg);
      const RunSummary s = summarize(cfg, log);
      row.converged = s.converged;
      row.final_bias = s.final_bias;
      if (s.fit) {
        row.rate = s.fit->rate;
        row.r_squared = s.fit->r_squared;
        row.mean_rate = s.fit->mean_rate;
      }
      if (s.abort) {
        row.status = std::string("aborted: ") + std::string(to_string(s.abort->code));
      } else {
        row.status = s.converged ? "converged" : "not converged";
      }
    } catch (const Error& e) {
      row.status = std::string("error: ") + e.what();
    }
    return row;
  };

  const std::size_t n = spec.values.size();
  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<SweepRow> rows(n);
  for (std::size_t start = 0; start < n; start += threads) {
    std::vector<std::future<SweepRow>> batch;
    for (std::size_t i = start; i < std::min(n, start + threads); ++i) {
      batch.push_back(std::async(std::launch::async, run_one, i));
    }
    for (auto& f : batch) {
      SweepRow r = f.get();
      rows[r.index] = r;
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::string& parameter,
                     const std::vector<SweepRow>& rows) {
  os << "index,parameter,value,converged,rate,r_squared,mean_rate,final_bias,status\n";
  for (const auto& r : rows) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    os << r.index << ',' << parameter << ',' << format_double(r.value) << ','
       << (r.converged ? 1 : 0) << ',' << format_double(r.rate) << ','
       << format_double(r.r_squared) << ',' << format_double(r.mean_rate) << ','
       << format_double(r.final_bias) << ',' << status << '\n';
  }
}

int cmd_run(const std::string& config, const Overrides& o, std::ostream& out, std::ostream& err) {
  ScenarioConfig cfg;
  try {
    cfg = parse_scenario(load_with_overrides(config, o));
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  const SimLog log = run_scenario(cfg);
  const std::string path = output_path(cfg, o, "alos_run.csv");
  std::ofstream csv(path);
  if (!csv) {
    err << "cannot write '" << path << "'\n";
    return kExitConfigError;
  }
  write_log_csv(csv, log, cfg.output.decimation);

  const RunSummary s = summarize(cfg, log);
  out << "csv: " << path << '\n';
  out << "rows: " << log.rows.size() << '\n';
  out << "final errors: x_e = " << s.final_error.x_e << " m, y_e = " << s.final_error.y_e
      << " m, z_e = " << s.final_error.z_e << " m\n";
  out << "final bias |alpha_c - alpha_hat|: " << s.final_bias << " rad\n";
  if (s.fit) {
    out << "fitted rate: " << s.fit->rate << " 1/s (r^2 = " << s.fit->r_squared << ", window "
        << s.fit->t_start << ".." << s.fit->t_end << " s)\n";
  } else {
    out << "fitted rate: n/a (" << s.fit_note << ")\n";
  }
  if (s.abort) {
    print_abort(err, *s.abort);
    return kExitAbort;
  }
  out << (s.converged ? "converged" : "not converged") << '\n';
  return s.converged ? kExitOk : kExitNotConverged;
}

int cmd_compare(const std::string& config, const Overrides& o, std::ostream& out,
                std::ostream& err) {
  ScenarioConfig cfg;
  try {
    cfg = parse_scenario(load_with_overrides(config, o));
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  const SimLog log = run_scenario(cfg);
  const auto rows = compare_formulations(log);
  const std::string path = output_path(cfg, o, "alos_compare.csv");
  std::ofstream csv(path);
  if (!csv) {
    err << "cannot write '" << path << "'\n";
    return kExitConfigError;
  }
  write_compare_csv(csv, rows);

  double max_gap = 0.0;
  for (const auto& r : rows) {
    if (std::isfinite(r.difference)) max_gap = std::max(max_gap, std::abs(r.difference));
  }
  out << "csv: " << path << '\n';
  out << "max |alpha_c* - alpha_c|: " << max_gap << " rad\n";
  out << "max |identity residual|: " << max_identity_residual(rows) << " rad\n";
  if (log.abort) {
    print_abort(err, *log.abort);
    return kExitAbort;
  }
  return kExitOk;
}

int cmd_sweep(const std::string& config, SweepSpec spec, const Overrides& o, std::ostream& out,
              std::ostream& err) {
  json base;
  try {
    base = load_with_overrides(config, o);
    // Validate the base scenario and the first grid point up front.
    parse_scenario(base);
    if (spec.values.empty()) {
      throw Error(ErrorCode::kConfig, "sweep needs at least one value");
    }
    parse_scenario(apply_sweep_value(base, spec.parameter, spec.values.front(), 0));
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  const auto rows = run_sweep(base, spec);
  if (o.out) {
    std::ofstream csv(*o.out);
    if (!csv) {
      err << "cannot write '" << *o.out << "'\n";
      return kExitConfigError;
    }
    write_sweep_csv(csv, spec.parameter, rows);
    out << "csv: " << *o.out << '\n';
  } else {
    write_sweep_csv(out, spec.parameter, rows);
  }
  return kExitOk;
}

int cmd_rate_fit(const RateFitArgs& args, std::ostream& out, std::ostream& err) {
  try {
    std::ifstream in(args.csv);
    if (!in) {
      throw Error(ErrorCode::kConfig, "cannot read '" + args.csv + "'");
    }
    const SimLog log = log_from_table(read_csv(in));
    GuidanceParams gp;
    gp.delta_h = args.delta_h;
    gp.delta_v = args.delta_v;
    gp.validate();
    FitOptions opts = default_fit_options(gp);
    opts.components = parse_components(args.components);
    opts.capture_level = args.capture;
    opts.floor = args.floor;
    opts.min_decades = args.min_decades;
    const RateFit fit = fit_exponential_rate(log, opts);
    out << "rate: " << format_double(fit.rate) << " 1/s\n"
        << "r_squared: " << format_double(fit.r_squared) << '\n'
        << "window: " << format_double(fit.t_start) << " .. " << format_double(fit.t_end)
        << " s (" << fit.samples << " samples, " << fit.decades << " decades)\n"
        << "mean_rate: " << format_double(fit.mean_rate) << " 1/s\n";
    return kExitOk;
  } catch (const Error& e) {
    err << to_string(e.code()) << ": " << e.what() << '\n';
    return e.code() == ErrorCode::kNoFit ? kExitNotConverged : kExitConfigError;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"3-D adaptive line-of-sight guidance simulator"};
  app.require_subcommand(1);

  std::string config;
  Overrides o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "scenario file (JSON)")->required();
    sub->add_option("--out", o.out, "output CSV path");
    sub->add_option("--dt", o.dt, "integration step override [s]");
    sub->add_option("--duration", o.duration, "duration override [s]");
    sub->add_option("--seed", o.seed, "seed override");
  };

  CLI::App* run = app.add_subcommand("run", "simulate a scenario and write the log CSV");
  add_common(run);
  CLI::App* compare = app.add_subcommand("compare", "compare the two vertical crab angles");
  add_common(compare);

  SweepSpec spec;
  CLI::App* sweep = app.add_subcommand("sweep", "run a parameter grid");
  add_common(sweep);
  sweep->add_option("--param", spec.parameter,
                    "radius | gain | curvature | current | /json/pointer")
      ->required();
  sweep->add_option("--values", spec.values, "comma-separated grid")->required()->delimiter(',');
  sweep->add_option("--threads", spec.threads, "parallel runs (0 = all cores)");

  RateFitArgs fit;
  CLI::App* rate = app.add_subcommand("rate-fit", "fit an exponential rate to a log CSV");
  rate->add_option("--csv", fit.csv, "log CSV written by 'run'")->required();
  rate->add_option("--delta-h", fit.delta_h, "horizontal look-ahead used for weighting [m]");
  rate->add_option("--delta-v", fit.delta_v, "vertical look-ahead used for weighting [m]");
  rate->add_option("--components", fit.components, "subset of z_e,alpha,y_e,beta");
  rate->add_option("--capture", fit.capture, "window opens below this weighted norm");
  rate->add_option("--floor", fit.floor, "window closes below this weighted norm");
  rate->add_option("--min-decades", fit.min_decades, "required decay across the window");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  if (*run) return cmd_run(config, o, out, err);
  if (*compare) return cmd_compare(config, o, out, err);
  if (*sweep) return cmd_sweep(config, spec, o, out, err);
  return cmd_rate_fit(fit, out, err);
}

}  // namespace alos::cli
