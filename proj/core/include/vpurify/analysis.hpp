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

#include "vpurify/pec.hpp"

namespace vpurify {

struct ScalingPoint {
  int n_encodings = 0;  // N
  double bias_sq = 0.0;
  double variance = 0.0;
  std::string method;
  int order = 0;   // m (0 for reference curves)
  int layers = 0;  // L
};

enum class CostVerdict { ignore_cheaper, equal, pec_cheaper };
std::string to_string(CostVerdict v);

struct CostReport {
  NoiseFamily family;
  double p = 0.0;
  double ignore_cost = 0.0;  // Real(f01)^-2
  double pec_cost = 0.0;     // γ²
  CostVerdict verdict = CostVerdict::equal;
};

/// 2 (1 − p_ideal^{VCP-m}) ‖O‖_∞.
double bias_bound(double p_ideal_vcp_m, double o_norm);

/// Delta-method variance of a ratio estimator:
/// (μx²/μy²)(Var x/μx² − 2 Cov/(μx μy) + Var y/μy²).
double ratio_variance(double mu_x, double mu_y, double var_x, double var_y, double cov_xy);

/// ν = γ² / (ε² η_m²), constant factor 1.
double sampling_cost(double gamma, double eta_m, double epsilon);

/// η_m = Real(f01³) · P̂_m.
double eta_m(Complex f01, double p_hat_m);

/// Compares ignoring control noise (cost Real(f01)^-2) against mitigating
/// it with PEC (cost γ²).
CostReport cost_comparison(NoiseFamily family, double p);

/// Closed-form (n = 1) scaling model: single-qubit Pauli gate noise composed
/// per layer, merged with the per-layer cSWAP region-2 noise, purified to
/// order m, with the region-4 remainder kept (vcp) or PEC-cancelled (pvcp).
struct ScalingScanSettings {
  double gate_rate = 0.001;
  double cswap_rate = 0.05;
  NoiseFamily family = NoiseFamily::depolarizing;  // depolarizing or dephasing
  double shots = 1e6;                              // ν in the variance model
  std::vector<int> orders{2, 3};                   // single-layer PVCP curves
  std::vector<int> layer_counts{1, 2, 3};          // multi-layer m = 2 curves
  std::vector<int> n_grid;
};

std::vector<ScalingPoint> scaling_scan(const ScalingScanSettings& settings);

/// The Pauli 4-vector model behind scaling_scan, exposed for circuit-level
/// cross-checks: effective post-mitigation channel (as a single-qubit Pauli
/// probability vector), the denominator η, and the PEC γ.
struct ScalingChannelModel {
  std::vector<double> effective_probs;  // 4 entries
  double eta = 1.0;
  double gamma = 1.0;
};
ScalingChannelModel scaling_channel_model(const ScalingScanSettings& settings, int n_encodings,
                                          int order, int layers, bool pec_on);

}  // namespace vpurify
