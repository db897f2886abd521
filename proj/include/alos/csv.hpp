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
/// \brief CSV telemetry: the fixed-column simulation log and a small reader.

#ifndef ALOS_CSV_HPP_
#define ALOS_CSV_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "alos/closed_loop_sim.hpp"

namespace alos {

/// Shortest representation that round-trips to the same double.
std::string format_double(double value);

/// Column order of the simulation log. Never reorder within a major version.
const std::vector<std::string>& log_columns();

void write_log_csv(std::ostream& os, const SimLog& log, std::size_t decimation = 1);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Index of a named column; throws Error(kConfig) when absent.
  std::size_t column(std::string_view name) const;
};

/// Numeric CSV with a header row. "nan" cells parse to NaN.
CsvTable read_csv(std::istream& is);

/// Rebuilds the log rows from a table written by write_log_csv().
SimLog log_from_table(const CsvTable& table);

}  // namespace alos

#endif  // ALOS_CSV_HPP_
