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

#include "vpurify/harness.hpp"

namespace vpurify {

enum class OutputFormat { csv, json };
std::string to_string(OutputFormat f);
OutputFormat output_format_from_string(const std::string& s);

struct ScanAxes {
  std::vector<int> n_values;
  std::vector<double> rates;
  std::vector<std::string> methods;
  std::vector<int> regions;

  bool operator==(const ScanAxes&) const = default;
};

/// Parsed form of the nested key-value experiment document (schema = 1).
/// Unknown sections or keys are rejected; every rate and count is validated
/// on load.
struct RunConfig {
  int schema = 1;
  ExperimentSpec spec;
  std::string out_path = "out.csv";
  OutputFormat format = OutputFormat::csv;
  ScanAxes scan;

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical writer; parse_config(to_text(c)) == c for every valid config.
std::string to_text(const RunConfig& config);

}  // namespace vpurify
