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

#include "vpurify/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace vpurify {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string csv_cell(const Cell& cell) {
  if (std::holds_alternative<long long>(cell))
    return std::to_string(std::get<long long>(cell));
  if (std::holds_alternative<std::uint64_t>(cell))
    return std::to_string(std::get<std::uint64_t>(cell));
  if (std::holds_alternative<double>(cell)) return format_double(std::get<double>(cell));
  return std::get<std::string>(cell);
}

std::string json_cell(const Cell& cell) {
  if (std::holds_alternative<long long>(cell))
    return std::to_string(std::get<long long>(cell));
  if (std::holds_alternative<std::uint64_t>(cell))
    return std::to_string(std::get<std::uint64_t>(cell));
  if (std::holds_alternative<double>(cell)) {
    const double v = std::get<double>(cell);
    if (!std::isfinite(v)) return "null";
    return format_double(v);
  }
  return "\"" + std::get<std::string>(cell) + "\"";
}

}  // namespace

void write_table(const Table& table, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::csv) {
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      out << (c ? "," : "") << table.columns[c];
    out << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_cell(row[c]);
      out << "\n";
    }
    return;
  }
  out << "[";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r ? ",\n " : "\n ") << "{";
    for (std::size_t c = 0; c < table.rows[r].size(); ++c)
      out << (c ? "," : "") << "\"" << table.columns[c] << "\":" << json_cell(table.rows[r][c]);
    out << "}";
  }
  out << "\n]\n";
}

void write_table_file(const Table& table, OutputFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  write_table(table, format, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

Table records_table(const std::vector<EstimateRecord>& records) {
  Table table;
  table.columns = {"method", "N",       "p",       "trial", "layers", "m",
                   "gap",    "ci_low",  "ci_high", "gamma", "eta",    "seed"};
  for (const auto& r : records) {
    table.rows.push_back({r.method, static_cast<long long>(r.n_encodings), r.rate,
                          static_cast<long long>(r.trial), static_cast<long long>(r.layers),
                          static_cast<long long>(r.order), r.gap, r.ci_low, r.ci_high, r.gamma,
                          r.denominator, r.seed});
  }
  return table;
}

void emit(const std::vector<EstimateRecord>& records, OutputFormat format,
          const std::string& path) {
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& a = records[i - 1];
    const auto& b = records[i];
    const auto key = [](const EstimateRecord& r) {
      return std::tuple<const std::string&, int, int>(r.method, r.n_encodings, r.trial);
    };
    if (key(b) < key(a))
      throw std::invalid_argument("emit: records must be sorted by (method, N, trial)");
  }
  write_table_file(records_table(records), format, path);
}

}  // namespace vpurify
