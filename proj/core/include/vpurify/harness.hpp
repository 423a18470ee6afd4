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

#include <cstdint>
#include <limits>

#include "vpurify/metrology.hpp"

namespace vpurify {

struct ExperimentSpec {
  TaskSpec task;
  NoiseModel noise;
  PurificationConfig mitigation;  // method + m + max layers + refresh + PEC mode
  std::optional<long> shots;      // absent = exact mode
  int trials = 1;
  std::uint64_t master_seed = 0;
  std::optional<NoiseSpec> pec_assumed_noise;  // robustness runs
  int feedback_iterations = 10;

  void validate() const;
  bool operator==(const ExperimentSpec&) const = default;
};

struct EstimateRecord {
  int trial = 0;
  std::string method;
  int n_encodings = 0;  // N
  double rate = 0.0;    // context rate column (scan axis)
  int layers = 0;
  int order = 0;  // m
  std::vector<double> estimate;
  double gap = 0.0;
  double numerator = 0.0;
  double denominator = 1.0;
  double gamma = 1.0;
  std::uint64_t seed = 0;
  double ci_low = std::numeric_limits<double>::quiet_NaN();
  double ci_high = std::numeric_limits<double>::quiet_NaN();
};

/// One joint sample point of the commuting pair (X ⊗ O, X ⊗ I): the control
/// X outcome (±1) and the target observable eigenvalue.
struct JointOutcome {
  double prob = 0.0;
  int x = 1;        // control X outcome, ±1
  double o = 0.0;   // observable eigenvalue
};

struct RatioSampleEstimate {
  double numerator = 0.0;    // mean of x·o
  double denominator = 0.0;  // mean of x
};

/// ν joint samples; numerator and denominator come from the same draws, so
/// their covariance matches the simultaneous-measurement protocol.
RatioSampleEstimate shot_sample_ratio(const std::vector<JointOutcome>& dist, long shots,
                                      Rng& rng);

struct ConfidenceInterval {
  double mean = 0.0;
  double low = 0.0;
  double high = 0.0;
};

/// mean ± 1.96 s/√T (normal approximation). Throws below 2 values.
ConfidenceInterval confidence_interval(const std::vector<double>& values);

/// L minimizing the mean gap; ties break toward smaller L. Throws on empty
/// input.
int select_optimal_layer(const std::vector<EstimateRecord>& records);

/// Deterministic given the spec: per-trial seeds derive from
/// mix64(master ^ mix64(trial)); exact mode collapses to a single record per
/// method variant; vcp/pvcp emit one record per layer count 1..L.
std::vector<EstimateRecord> run_experiment(const ExperimentSpec& spec);

/// Across-trials CI per (method, N, layers) group, written back onto each
/// row; groups with one row get ci_low = ci_high = gap.
void attach_confidence_intervals(std::vector<EstimateRecord>& records);

/// Sort order used for serialization: (method, N, trial, layers).
void sort_records(std::vector<EstimateRecord>& records);

}  // namespace vpurify
