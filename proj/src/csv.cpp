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

#include "alos/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace alos {

std::string format_double(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

const std::vector<std::string>& log_columns() {
  static const std::vector<std::string> columns = {
      "t",       "x_n",     "y_n",          "z_n",    "x_e",       "y_e",
      "z_e",     "phi",     "theta",        "psi",    "psi_d",     "theta_d",
      "alpha_c", "alpha_c_star", "beta_c",  "alpha_hat", "beta_hat", "gamma",
      "U",       "U_h",     "segment_index_or_varpi", "flags"};
  return columns;
}

void write_log_csv(std::ostream& os, const SimLog& log, std::size_t decimation) {
  const auto& cols = log_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    os << (i ? "," : "") << cols[i];
  }
  os << '\n';
  const std::size_t every = decimation == 0 ? 1 : decimation;
  for (std::size_t k = 0; k < log.rows.size(); ++k) {
    if (k % every != 0 && k + 1 != log.rows.size()) {
      continue;
    }
    const LogRow& r = log.rows[k];
    const double values[] = {r.t,
                             r.position.x(),
                             r.position.y(),
                             r.position.z(),
                             r.error.x_e,
                             r.error.y_e,
                             r.error.z_e,
                             r.attitude.phi,
                             r.attitude.theta,
                             r.attitude.psi,
                             r.psi_d,
                             r.theta_d,
                             r.alpha_c,
                             r.alpha_c_star,
                             r.beta_c,
                             r.alpha_hat,
                             r.beta_hat,
                             r.gamma,
                             r.speed,
                             r.speed_horizontal,
                             r.segment_or_varpi};
    for (double v : values) {
      os << format_double(v) << ',';
    }
    os << r.flags << '\n';
  }
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) {
      return i;
    }
  }
  throw Error(ErrorCode::kConfig, "csv: missing column '" + std::string(name) + "'");
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    std::size_t start = 0;
    while (start < cell.size() && cell[start] == ' ') ++start;
    out.push_back(cell.substr(start));
  }
  return out;
}

double parse_cell(const std::string& cell, std::size_t line) {
  if (cell == "nan" || cell == "NaN" || cell == "-nan") {
    return std::numeric_limits<double>::quiet_NaN();
  }
  double value = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
    throw Error(ErrorCode::kConfig,
                "csv line " + std::to_string(line) + ": cannot parse '" + cell + "'");
  }
  return value;
}

}  // namespace

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  if (!std::getline(is, line)) {
    throw Error(ErrorCode::kConfig, "csv: empty input");
  }
  table.columns = split(line);
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") {
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != table.columns.size()) {
      throw Error(ErrorCode::kConfig, "csv line " + std::to_string(lineno) + ": expected " +
                                          std::to_string(table.columns.size()) + " cells");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      row.push_back(parse_cell(c, lineno));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

SimLog log_from_table(const CsvTable& table) {
  const auto& cols = log_columns();
  std::vector<std::size_t> idx;
  idx.reserve(cols.size());
  for (const auto& name : cols) {
    idx.push_back(table.column(name));
  }
  SimLog log;
  for (const auto& v : table.rows) {
    auto at = [&](std::size_t k) { return v[idx[k]]; };
    LogRow r;
    r.t = at(0);
    r.position = NedVector(at(1), at(2), at(3));
    r.error = {at(4), at(5), at(6)};
    r.attitude.phi = at(7);
    r.attitude.theta = at(8);
    r.attitude.psi = at(9);
    r.psi_d = at(10);
    r.theta_d = at(11);
    r.alpha_c = at(12);
    r.alpha_c_star = at(13);
    r.beta_c = at(14);
    r.alpha_hat = at(15);
    r.beta_hat = at(16);
    r.gamma = at(17);
    r.speed = at(18);
    r.speed_horizontal = at(19);
    r.segment_or_varpi = at(20);
    r.flags = static_cast<std::uint32_t>(at(21));
    log.rows.push_back(r);
  }
  if (log.rows.size() >= 2) {
    log.dt = log.rows[1].t - log.rows[0].t;
  }
  return log;
}

}  // namespace alos
