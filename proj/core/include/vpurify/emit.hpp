// Copyright 2026 The vpurify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <variant>

#include "vpurify/config.hpp"

namespace vpurify {

/// %.17g: enough significant digits for exact double round trips.
std::string format_double(double v);

using Cell = std::variant<long long, std::uint64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// CSV: header row then one line per row. JSON: array of objects keyed by
/// column name; doubles carry 17 significant digits in both formats.
void write_table(const Table& table, OutputFormat format, std::ostream& out);
void write_table_file(const Table& table, OutputFormat format, const std::string& path);

/// The experiment-record schema:
/// method,N,p,trial,layers,m,gap,ci_low,ci_high,gamma,eta,seed.
Table records_table(const std::vector<EstimateRecord>& records);

/// Records must arrive sorted by (method, N, trial).
void emit(const std::vector<EstimateRecord>& records, OutputFormat format,
          const std::string& path);

}  // namespace vpurify
