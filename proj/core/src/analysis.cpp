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

#include "vpurify/analysis.hpp"

#include <cmath>

namespace vpurify {

std::string to_string(CostVerdict v) {
  switch (v) {
    case CostVerdict::ignore_cheaper: return "ignore-cheaper";
    case CostVerdict::equal: return "equal";
    case CostVerdict::pec_cheaper: return "pec-cheaper";
  }
  return "?";
}

double bias_bound(double p_ideal_vcp_m, double o_norm) {
  if (p_ideal_vcp_m < 0.0 || p_ideal_vcp_m > 1.0)
    throw std::invalid_argument("bias_bound: probability out of [0, 1]");
  if (o_norm < 0.0) throw std::invalid_argument("bias_bound: norm must be nonnegative");
  return 2.0 * (1.0 - p_ideal_vcp_m) * o_norm;
}

double ratio_variance(double mu_x, double mu_y, double var_x, double var_y, double cov_xy) {
  if (std::abs(mu_y) < 1e-12)
    throw std::domain_error("ratio_variance: denominator mean below 1e-12");
  const double r2 = (mu_x * mu_x) / (mu_y * mu_y);
  return r2 * (var_x / (mu_x * mu_x) - 2.0 * cov_xy / (mu_x * mu_y) + var_y / (mu_y * mu_y));
}

double sampling_cost(double gamma, double eta, double epsilon) {
  if (gamma <= 0.0 || eta <= 0.0 || epsilon <= 0.0)
    throw std::invalid_argument("sampling_cost: all inputs must be positive");
  return (gamma * gamma) / (epsilon * epsilon * eta * eta);
}

double eta_m(Complex f01, double p_hat_m) {
  if (p_hat_m <= 0.0 || p_hat_m > 1.0 + 1e-12)
    throw std::invalid_argument("eta_m: P̂_m must lie in (0, 1]");
  const Complex f3 = f01 * f01 * f01;
  return f3.real() * p_hat_m;
}

CostReport cost_comparison(NoiseFamily family, double p) {
  CostReport report;
  report.family = family;
  report.p = p;
  const PecDecomposition dec = decomposition_for(family, p);  // validates range per family
  report.pec_cost = dec.gamma * dec.gamma;
  const Complex f01 = check_theorem1(QuantumChannel::identity(1), make_channel(family, p, 1)).f01;
  if (f01.real() <= 0.0)
    throw std::domain_error("cost_comparison: Real(f01) vanished; ignoring is not an option");
  report.ignore_cost = 1.0 / (f01.real() * f01.real());
  const double diff = report.ignore_cost - report.pec_cost;
  const double scale = std::max({1.0, report.ignore_cost, report.pec_cost});
  if (std::abs(diff) < 1e-12 * scale) report.verdict = CostVerdict::equal;
  else report.verdict = diff < 0.0 ? CostVerdict::ignore_cheaper : CostVerdict::pec_cheaper;
  return report;
}

namespace {

// Single-qubit Pauli probability vectors (I, X, Y, Z weights).
using Pauli4 = std::array<double, 4>;

Pauli4 family_probs(NoiseFamily family, double p) {
  switch (family) {
    case NoiseFamily::depolarizing: return {1.0 - 0.75 * p, p / 4, p / 4, p / 4};
    case NoiseFamily::dephasing: return {1.0 - p, 0.0, 0.0, p};
    default:
      throw std::invalid_argument("scaling model supports Pauli families only");
  }
}

// PTM diagonal (I, X, Y, Z damping factors) of a Pauli vector.
Pauli4 to_ptm(const Pauli4& p) {
  return {p[0] + p[1] + p[2] + p[3], p[0] + p[1] - p[2] - p[3], p[0] - p[1] + p[2] - p[3],
          p[0] - p[1] - p[2] + p[3]};
}

Pauli4 from_ptm(const Pauli4& l) {
  return {(l[0] + l[1] + l[2] + l[3]) / 4, (l[0] + l[1] - l[2] - l[3]) / 4,
          (l[0] - l[1] + l[2] - l[3]) / 4, (l[0] - l[1] - l[2] + l[3]) / 4};
}

Pauli4 compose_pauli(const Pauli4& a, const Pauli4& b) {
  const Pauli4 la = to_ptm(a), lb = to_ptm(b);
  return from_ptm({la[0] * lb[0], la[1] * lb[1], la[2] * lb[2], la[3] * lb[3]});
}

Pauli4 power_pauli(const Pauli4& a, int count) {
  Pauli4 l = to_ptm(a);
  Pauli4 out{1.0, 1.0, 1.0, 1.0};
  for (int i = 0; i < 4; ++i) out[i] = std::pow(l[i], count);
  return from_ptm(out);
}

Pauli4 purify(const Pauli4& p, int m, double& p_hat) {
  p_hat = 0.0;
  for (double pi : p) p_hat += std::pow(pi, m);
  Pauli4 out;
  for (int i = 0; i < 4; ++i) out[i] = std::pow(p[i], m) / p_hat;
  return out;
}

std::vector<int> block_sizes(int total, int layers) {
  std::vector<int> sizes(layers, total / layers);
  for (int i = 0; i < total % layers; ++i) ++sizes[i];
  return sizes;
}

}  // namespace

ScalingChannelModel scaling_channel_model(const ScalingScanSettings& s, int n_encodings,
                                          int order, int layers, bool pec_on) {
  ScalingChannelModel model;
  const Pauli4 gate = family_probs(s.family, s.gate_rate);
  const Pauli4 cswap = family_probs(s.family, s.cswap_rate);
  const double f01_sw =
      check_theorem1(QuantumChannel::identity(1), make_channel(s.family, s.cswap_rate, 1))
          .f01.real();
  const double f01_prep =
      check_theorem1(QuantumChannel::identity(1), make_channel(s.family, s.gate_rate, 1))
          .f01.real();
  const double gamma_site = decomposition_for(s.family, s.cswap_rate).gamma;

  Pauli4 total{1.0, 0.0, 0.0, 0.0};
  // Control-subsystem sites: the preparation gate plus two cSWAP layers per
  // VCP layer, each contributing one f01 factor to the denominator.
  model.eta = f01_prep * std::pow(f01_sw, 2 * layers);
  model.gamma = 1.0;
  for (int size : block_sizes(n_encodings, layers)) {
    // Region-2 merge: the encoding block plus one cSWAP noise application
    // per register, purified to order m.
    const Pauli4 merged = compose_pauli(cswap, power_pauli(gate, size));
    double p_hat = 0.0;
    const Pauli4 purified = purify(merged, order, p_hat);
    total = compose_pauli(purified, total);
    model.eta *= p_hat;
    if (pec_on) {
      model.gamma *= gamma_site;
    } else {
      // Region-4 remainder: one unmitigated cSWAP noise application on the
      // target after each layer.
      total = compose_pauli(cswap, total);
    }
  }
  model.effective_probs = {total[0], total[1], total[2], total[3]};
  return model;
}

std::vector<ScalingPoint> scaling_scan(const ScalingScanSettings& settings) {
  if (settings.n_grid.empty()) throw std::invalid_argument("scaling_scan: empty N grid");
  std::vector<ScalingPoint> points;

  const auto push = [&](int n, const std::string& method, int m, int l, double bias,
                        double var_top) {
    ScalingPoint pt;
    pt.n_encodings = n;
    pt.method = method;
    pt.order = m;
    pt.layers = l;
    pt.bias_sq = (bias / n) * (bias / n);
    pt.variance = var_top / (static_cast<double>(n) * n);
    points.push_back(std::move(pt));
  };

  for (int n : settings.n_grid) {
    {
      // Unmitigated baseline: no purification circuit, so no cSWAP noise;
      // shot-noise variance with γ = η = 1.
      const Pauli4 gate = family_probs(settings.family, settings.gate_rate);
      const Pauli4 total = [&] {
        Pauli4 l = to_ptm(gate);
        for (int i = 0; i < 4; ++i) l[i] = std::pow(l[i], n);
        return from_ptm(l);
      }();
      push(n, "none", 0, 0, bias_bound(total[0], 1.0), 1.0 / settings.shots);
    }
    for (int m : settings.orders) {
      const auto model = scaling_channel_model(settings, n, m, 1, /*pec_on=*/true);
      push(n, "pvcp", m, 1, bias_bound(model.effective_probs[0], 1.0),
           sampling_cost(model.gamma, model.eta, 1.0) / settings.shots);
    }
    for (int l : settings.layer_counts) {
      const auto model = scaling_channel_model(settings, n, 2, l, /*pec_on=*/true);
      push(n, "pvcp-multilayer", 2, l, bias_bound(model.effective_probs[0], 1.0),
           sampling_cost(model.gamma, model.eta, 1.0) / settings.shots);
      const auto vcp = scaling_channel_model(settings, n, 2, l, /*pec_on=*/false);
      push(n, "vcp-multilayer", 2, l, bias_bound(vcp.effective_probs[0], 1.0),
           sampling_cost(1.0, vcp.eta, 1.0) / settings.shots);
    }
    {
      ScalingPoint sql;
      sql.n_encodings = n;
      sql.method = "sql";
      sql.bias_sq = 0.0;
      sql.variance = 1.0 / (settings.shots * n);
      points.push_back(std::move(sql));
    }
  }
  return points;
}

}  // namespace vpurify
