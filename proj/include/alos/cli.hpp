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
/// \brief Command-line front end: run, compare, sweep and rate-fit verbs.

#ifndef ALOS_CLI_HPP_
#define ALOS_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "alos/closed_loop_sim.hpp"
#include "alos/rate_fit.hpp"

namespace alos::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitAbort = 2,
  kExitNotConverged = 3,
};

struct Overrides {
  std::optional<double> dt;
  std::optional<double> duration;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

void apply_overrides(nlohmann::json& doc, const Overrides& o);

/// Fit settings used for run summaries and sweeps.
FitOptions default_fit_options(const GuidanceParams& gp);

struct RunSummary {
  bool converged = false;
  TrackingError final_error;
  double final_bias = 0.0;  // |alpha_c - alpha_hat| at the last row
  std::optional<RateFit> fit;
  std::string fit_note;
  std::optional<AbortInfo> abort;
};

RunSummary summarize(const ScenarioConfig& config, const SimLog& log);

struct CompareRow {
  double t = 0.0;
  double alpha_c = 0.0;
  double alpha_c_star = 0.0;
  double beta_c = 0.0;
  double gamma = 0.0;
  double difference = 0.0;  // alpha_c* - alpha_c
  double predicted = 0.0;   // gamma - atan(tan(gamma)/cos(beta_c)); NaN when singular
  double residual = 0.0;    // difference - predicted; NaN when either is undefined
};

std::vector<CompareRow> compare_formulations(const SimLog& log);

/// Largest |residual| over rows where it is defined.
double max_identity_residual(const std::vector<CompareRow>& rows);

void write_compare_csv(std::ostream& os, const std::vector<CompareRow>& rows);

struct SweepSpec {
  /// "radius", "gain", "curvature", "current", or a JSON pointer such as
  /// "/guidance/delta_h".
  std::string parameter;
  std::vector<double> values;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct SweepRow {
  std::size_t index = 0;
  double value = 0.0;
  bool converged = false;
  double rate = 0.0;       // NaN without a fit
  double r_squared = 0.0;  // NaN without a fit
  double mean_rate = 0.0;
  double final_bias = 0.0;
  std::string status;
};

/// Scenario document for one grid point.
nlohmann::json apply_sweep_value(const nlohmann::json& base, const std::string& parameter,
                                 double value, std::size_t index);

/// Runs every grid point; per-point failures are recorded in the row.
std::vector<SweepRow> run_sweep(const nlohmann::json& base, const SweepSpec& spec);

void write_sweep_csv(std::ostream& os, const std::string& parameter,
                     const std::vector<SweepRow>& rows);

struct RateFitArgs {
  std::string csv;
  double delta_h = 20.0;
  double delta_v = 20.0;
  std::string components = "z_e,alpha,y_e,beta";
  double capture = 1.0;
  double floor = 1e-8;
  double min_decades = 2.0;
};

int cmd_run(const std::string& config, const Overrides& o, std::ostream& out, std::ostream& err);
int cmd_compare(const std::string& config, const Overrides& o, std::ostream& out,
                std::ostream& err);
int cmd_sweep(const std::string& config, SweepSpec spec, const Overrides& o, std::ostream& out,
              std::ostream& err);
int cmd_rate_fit(const RateFitArgs& args, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a verb.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace alos::cli

#endif  // ALOS_CLI_HPP_
