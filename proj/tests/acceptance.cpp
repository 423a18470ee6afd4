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
//
// End-to-end acceptance suite. Each test prints one pass/fail line; every
// tolerance is pinned in code.

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "test_util.hpp"
#include "vpurify/analysis.hpp"
#include "vpurify/emit.hpp"

namespace vpurify {
namespace {

void report(int criterion, const std::string& label) {
  std::cout << "[CRITERION " << criterion << "] "
            << (::testing::Test::HasFailure() ? "FAIL" : "PASS") << " - " << label << std::endl;
}

const std::vector<NoiseFamily> kFamilies = {
    NoiseFamily::depolarizing, NoiseFamily::dephasing, NoiseFamily::amplitude_damping};

TEST(Acceptance, Criterion01_PecExactness) {
  Rng rng(101);
  for (const auto family : kFamilies) {
    for (double p : {0.01, 0.05, 0.1}) {
      const QuantumChannel noise = make_channel(family, p, 1);
      const std::vector<PecDecomposition> sites{decomposition_for(family, p)};
      for (int rep = 0; rep < 3; ++rep) {
        const DensityMatrix rho = testing::random_density(rng, 1);
        const ComplexMatrix u = testing::random_unitary(rng, 2);
        const ComplexMatrix obs = testing::random_hermitian(rng, 2);
        const auto mitigated =
            exact_mitigated_expectation(sites, [&](std::span<const int> branch) {
              ComplexMatrix state = u * rho.matrix() * u.adjoint();
              state = apply_channel(pec_operation_channel(sites[0].terms[branch[0]].op), state,
                                    {0}, 1);
              return expectation(obs, noise.apply_full(state));
            });
        const double ideal = expectation(obs, DensityMatrix(u * rho.matrix() * u.adjoint()));
        EXPECT_LT(std::abs(mitigated.value - ideal), 1e-10)
            << to_string(family) << " p=" << p;
      }
    }
  }
  report(1, "exact-branch PEC recovers noiseless expectations");
}

TEST(Acceptance, Criterion02_PurifiedChannelEquivalence) {
  Rng rng(102);
  PurificationConfig cfg;
  cfg.method = PurificationMethod::vcp;
  cfg.order = 2;
  for (int rep = 0; rep < 20; ++rep) {
    const DensityMatrix rho = testing::random_density(rng, 1);
    const ComplexMatrix obs = testing::random_hermitian(rng, 2);
    const QuantumChannel noise =
        QuantumChannel::from_pauli_probs(testing::random_pauli_probs(rng, 1));
    const ComplexMatrix u = testing::random_unitary(rng, 2);
    const GateSequence gates{make_gate(u, noise)};
    const auto r = simulate_vcp(gates, rho, obs, cfg, NoiseLocationMask{}, CswapNoiseSpec{});
    const double expected =
        (obs * purified_channel(noise, 2).apply_full(u * rho.matrix() * u.adjoint()))
            .trace()
            .real();
    EXPECT_LT(std::abs(r.ratio - expected), 1e-10);
  }
  report(2, "m=2 VCP circuit equals the purified-channel formula");
}

TEST(Acceptance, Criterion03_Theorem1Invariance) {
  const GateSequence gates{make_gate(spin_evolution(0.4, 1.1, 0.2, 0.7),
                                     QuantumChannel::from_pauli_probs({0.8, 0.05, 0.05, 0.1}))};
  const DensityMatrix probe = pure_state(ket(0, 2));
  const ComplexMatrix obs = pauli('Z');
  PurificationConfig cfg;
  cfg.method = PurificationMethod::vcp;
  cfg.order = 2;
  const auto base = simulate_vcp(gates, probe, obs, cfg, NoiseLocationMask{}, CswapNoiseSpec{});

  for (const auto family : kFamilies) {
    for (double p : {0.1, 0.3, 0.5}) {
      const QuantumChannel f = make_channel(family, p, 1);
      const double f01 = check_theorem1(QuantumChannel::identity(1), f).f01.real();
      const double scale = f01 * f01 * f01;
      NoiseLocationMask mask;
      mask.override1 = f;
      PurificationCircuit pc;
      pc.register_qubits = 1;
      pc.order = 2;
      pc.blocks = {gates};
      pc.mask = mask;
      const auto outcome = purification_outcome(pc, probe);
      const double numerator = outcome.numerators[0] - outcome.numerators[1];  // ⟨X⊗Z⟩
      EXPECT_LT(std::abs(numerator - scale * base.numerator), 1e-10)
          << to_string(family) << " p=" << p;
      if (std::abs(scale) < 1e-14) {
        // Dephasing at p=1/2: η = 0 exactly, ratio undefined by design.
        EXPECT_LT(std::abs(outcome.denominator), 1e-12);
        EXPECT_THROW(simulate_vcp(gates, probe, obs, cfg, mask, CswapNoiseSpec{}),
                     std::domain_error);
        continue;
      }
      const double ratio = numerator / outcome.denominator;
      EXPECT_LT(std::abs(ratio - base.ratio), 1e-10) << to_string(family) << " p=" << p;
    }
  }
  report(3, "region-1 noise cancels in the ratio, numerator scales by Real(f01^3)");
}

TEST(Acceptance, Criterion04_VspSpectralIdentity) {
  Rng rng(104);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = rep % 2 == 0 ? 1 : 2;
    const DensityMatrix rho = testing::random_density(rng, n);
    const ComplexMatrix obs = testing::random_hermitian(rng, 1 << n);
    const auto r = simulate_vsp(rho, obs, 2);
    const ComplexMatrix sq = rho.matrix() * rho.matrix();
    const double expected = (obs * sq).trace().real() / sq.trace().real();
    EXPECT_LT(std::abs(r.ratio - expected), 1e-10);
    const auto noisy_ctrl =
        simulate_vsp(rho, obs, 2, make_channel(NoiseFamily::amplitude_damping, 0.3, 1));
    EXPECT_LT(std::abs(noisy_ctrl.ratio - expected), 1e-10);
  }
  report(4, "m=2 VSP ratio equals tr(O rho^2)/tr(rho^2), control noise cancelled");
}

struct RegionScanPoint {
  double gap = 0.0;
  double p_y = 0.0;
  std::vector<double> numerators;
  double denominator = 0.0;
};

RegionScanPoint region_scan_point(NoiseFamily family, int region, double rate) {
  TaskSpec task;
  task.kind = TaskKind::zeeman_sequential;
  task.true_params = {0.1};
  task.encoding_count = 5;
  task.measurement = MeasurementBasis::ghz_y;
  NoiseModel noise;
  noise.single_qubit = {NoiseFamily::depolarizing, 0.001, {}};
  noise.two_qubit = {NoiseFamily::depolarizing, 0.01, {}};
  noise.cswap = {family, 0.0, std::nullopt};
  const TaskCircuit circuit = build_task_circuit(task, noise);

  NoiseLocationMask mask = NoiseLocationMask::all_off();
  const QuantumChannel injected = make_channel(family, rate, 1);
  if (region == 1) mask.override1 = injected;
  else if (region == 2) mask.override2 = injected;
  else if (region == 3) mask.override3 = injected;
  else mask.override4 = injected;

  PurificationCircuit pc;
  pc.register_qubits = 1;
  pc.order = 2;
  pc.blocks = {circuit.gates};
  pc.mask = mask;
  const auto outcome = purification_outcome(pc, circuit.probe);
  RegionScanPoint point;
  point.numerators = outcome.numerators;
  point.denominator = outcome.denominator;
  point.p_y = outcome.numerators[1] / outcome.denominator;
  point.gap = std::abs(zeeman_estimator(point.p_y, 5) - 0.1);
  return point;
}

TEST(Acceptance, Criterion05_NoiseLocationTaxonomy) {
  std::vector<double> rates;
  for (int i = 0; i < 10; ++i) rates.push_back(0.05 * i / 9.0);

  // Region 1: the estimate is flat across the scan for every family.
  for (const auto family : kFamilies) {
    const double reference = region_scan_point(family, 1, 0.0).gap;
    for (double rate : rates)
      EXPECT_LT(std::abs(region_scan_point(family, 1, rate).gap - reference), 1e-9)
          << to_string(family) << " rate " << rate;
  }

  // Region 2 moves the estimate by less than 10% of region 4's shift at the
  // same rate (families with a nonzero region-4 signal).
  for (const auto family : {NoiseFamily::depolarizing, NoiseFamily::amplitude_damping}) {
    const double base = region_scan_point(family, 2, 0.0).gap;
    const double shift2 = std::abs(region_scan_point(family, 2, 0.05).gap - base);
    const double shift4 = std::abs(region_scan_point(family, 4, 0.05).gap - base);
    EXPECT_LT(shift2, 0.1 * shift4) << to_string(family);
  }

  // Final-layer region 3 leaves both raw expectations unchanged.
  for (const auto family : kFamilies) {
    const auto base = region_scan_point(family, 3, 0.0);
    const auto noisy = region_scan_point(family, 3, 0.05);
    EXPECT_LT(std::abs(noisy.denominator - base.denominator), 1e-12);
    for (std::size_t x = 0; x < base.numerators.size(); ++x)
      EXPECT_LT(std::abs(noisy.numerators[x] - base.numerators[x]), 1e-12);
  }

  // Region 4: depolarizing shifts the mitigated ratio detectably...
  {
    const auto base = region_scan_point(NoiseFamily::depolarizing, 4, 0.0);
    const auto noisy = region_scan_point(NoiseFamily::depolarizing, 4, 0.05);
    EXPECT_GT(std::abs(noisy.p_y - base.p_y), 1e-4);
  }
  // ...while dephasing leaves computational-basis probabilities untouched.
  {
    const auto base = region_scan_point(NoiseFamily::dephasing, 4, 0.0);
    const auto noisy = region_scan_point(NoiseFamily::dephasing, 4, 0.05);
    for (std::size_t x = 0; x < base.numerators.size(); ++x)
      EXPECT_LT(std::abs(noisy.numerators[x] / noisy.denominator -
                         base.numerators[x] / base.denominator),
                1e-12);
  }
  report(5, "cSWAP noise-location taxonomy");
}

TEST(Acceptance, Criterion06_ControlNoiseCostTable) {
  for (int i = 1; i <= 50; ++i) {
    const double p_deph = 0.49 * i / 51.0;
    const auto deph = cost_comparison(NoiseFamily::dephasing, p_deph);
    EXPECT_NEAR(deph.ignore_cost, deph.pec_cost, 1e-12 * deph.pec_cost);
    EXPECT_EQ(deph.verdict, CostVerdict::equal);

    const double p = 0.9 * i / 51.0;
    const auto dep = cost_comparison(NoiseFamily::depolarizing, p);
    EXPECT_LT(dep.ignore_cost, dep.pec_cost);
    const auto ad = cost_comparison(NoiseFamily::amplitude_damping, p);
    EXPECT_LT(ad.ignore_cost, ad.pec_cost);
  }
  report(6, "ignore-vs-mitigate control-noise cost table");
}

TEST(Acceptance, Criterion07_ScalingShapes) {
  ScalingScanSettings settings;  // rates 0.001 / 0.05
  settings.n_grid = {100, 200, 500, 1000, 2000, 5000, 10000};
  const auto points = scaling_scan(settings);
  const auto find = [&](const std::string& method, int n, int m, int l) {
    for (const auto& pt : points)
      if (pt.method == method && pt.n_encodings == n && pt.order == m && pt.layers == l)
        return pt;
    throw std::logic_error("missing scaling point");
  };

  // (a) Single-layer purification cuts bias^2 by >= 10x at N = 100.
  const double baseline_100 = find("none", 100, 0, 0).bias_sq;
  EXPECT_LT(find("pvcp", 100, 2, 1).bias_sq, baseline_100 / 10.0);
  EXPECT_LT(find("pvcp", 100, 3, 1).bias_sq, baseline_100 / 10.0);

  // (b) The single-layer advantage is gone by N ~ 1e4.
  const double baseline_1e4 = find("none", 10000, 0, 0).bias_sq;
  EXPECT_NEAR(find("pvcp", 10000, 2, 1).bias_sq, baseline_1e4, 0.1 * baseline_1e4);

  // (c) Two layers drop below one at some N > 100.
  bool crossed = false;
  for (int n : settings.n_grid) {
    if (n <= 100) continue;
    if (find("pvcp-multilayer", n, 2, 2).bias_sq < find("pvcp-multilayer", n, 2, 1).bias_sq)
      crossed = true;
  }
  EXPECT_TRUE(crossed);
  report(7, "bias/variance scaling shapes");
}

ExperimentSpec reference_multiparam_spec() {
  ExperimentSpec spec;
  spec.task.kind = TaskKind::multiparam_sequential;
  spec.task.true_params = {1.0, 0.9, 0.8};
  spec.task.evolution_time = 0.001;
  spec.task.measurement = MeasurementBasis::bell;
  spec.noise.single_qubit = {NoiseFamily::depolarizing, 0.001, {}};
  spec.noise.two_qubit = {NoiseFamily::depolarizing, 0.01, {}};
  spec.noise.cswap = {NoiseFamily::depolarizing, 0.05, std::nullopt};
  spec.mitigation.order = 2;
  spec.mitigation.layers = 3;
  spec.mitigation.pec_mode = PecMode::exact_branch_sum;
  spec.master_seed = 424242;
  return spec;
}

double optimal_layer_gap(const std::vector<EstimateRecord>& records) {
  const int best = select_optimal_layer(records);
  double sum = 0.0;
  int count = 0;
  for (const auto& r : records)
    if (r.layers == best) {
      sum += r.gap;
      ++count;
    }
  return sum / count;
}

TEST(Acceptance, Criterion08_MultiparamExactOrdering) {
  for (int n : {100, 500}) {
    ExperimentSpec spec = reference_multiparam_spec();
    spec.task.encoding_count = n;

    spec.mitigation.method = PurificationMethod::none;
    const double noisy_gap = run_experiment(spec).front().gap;

    spec.mitigation.method = PurificationMethod::vcp;
    const double vcp_gap = optimal_layer_gap(run_experiment(spec));

    spec.mitigation.method = PurificationMethod::pvcp;
    const double pvcp_gap = optimal_layer_gap(run_experiment(spec));

    EXPECT_LT(pvcp_gap, noisy_gap) << "N=" << n;
    EXPECT_LT(pvcp_gap, vcp_gap) << "N=" << n;
  }
  report(8, "exact-mode gap ordering pvcp < {vcp, noisy}");
}

TEST(Acceptance, Criterion09_ShotModeConfidenceIntervals) {
  // nu = 1e6, 10 trials per experiment. A 10-trial half-width estimate
  // carries ~25% relative noise, so the comparisons average the measured
  // half-widths over 6 independent experiment repetitions. The PEC-vs-γ
  // bound is asserted in the single-layer configuration, the regime the
  // ratio-variance analysis covers (the denominator is not reweighted
  // there, Var(y) = Var(y')).
  constexpr long kShots = 1000000;
  constexpr int kTrials = 10;
  constexpr int kReps = 6;

  ExperimentSpec spec = reference_multiparam_spec();
  spec.task.encoding_count = 500;
  const TaskCircuit circuit = build_task_circuit(spec.task, spec.noise);

  struct Config {
    std::string name;
    PurificationMethod method;
    int layers;
  };
  const std::vector<Config> configs = {
      {"none", PurificationMethod::none, 0},   {"vsp", PurificationMethod::vsp, 0},
      {"pvsp", PurificationMethod::pvsp, 0},   {"vcp1", PurificationMethod::vcp, 1},
      {"pvcp1", PurificationMethod::pvcp, 1},  {"vcp2", PurificationMethod::vcp, 2},
      {"pvcp2", PurificationMethod::pvcp, 2},  {"vcp3", PurificationMethod::vcp, 3},
      {"pvcp3", PurificationMethod::pvcp, 3},
  };

  std::map<std::string, double> avg_hw, gamma, mean_gap;
  for (const auto& config : configs) {
    PurificationConfig cfg = spec.mitigation;
    cfg.method = config.method;
    cfg.layers = std::max(config.layers, 1);
    const PreparedMethod prepared =
        prepare_method(circuit, config.method, cfg, spec.noise, std::nullopt);

    double hw_sum = 0.0, gap_sum = 0.0;
    for (int rep = 0; rep < kReps; ++rep) {
      std::vector<double> gaps;
      for (int trial = 0; trial < kTrials; ++trial) {
        Rng rng(derive_seed(derive_seed(909090, rep), trial));
        const auto eval = evaluate_prepared(prepared, kShots, &rng);
        const auto estimate = estimate_parameters(spec.task, eval.probabilities);
        gaps.push_back(l1_gap(spec.task.true_params, estimate));
        gamma[config.name] = eval.gamma;
      }
      const auto ci = confidence_interval(gaps);
      hw_sum += (ci.high - ci.low) / 2.0;
      for (double g : gaps) gap_sum += g;
    }
    avg_hw[config.name] = hw_sum / kReps;
    mean_gap[config.name] = gap_sum / (kReps * kTrials);
  }

  // Every QEM method widens the interval relative to the unmitigated run
  // (layered methods at their optimal layer).
  const auto best_of = [&](const std::string& prefix) {
    std::string best = prefix + "1";
    for (int l = 2; l <= 3; ++l)
      if (mean_gap[prefix + std::to_string(l)] < mean_gap[best])
        best = prefix + std::to_string(l);
    return best;
  };
  const double none_hw = avg_hw["none"];
  EXPECT_GT(avg_hw["vsp"], none_hw);
  EXPECT_GT(avg_hw["pvsp"], none_hw);
  EXPECT_GT(avg_hw[best_of("vcp")], none_hw);
  EXPECT_GT(avg_hw[best_of("pvcp")], none_hw);

  // PEC should widen the interval by less than its total gamma factor.
  // Measured honestly, the gap-level ratio lands above gamma: the exact
  // per-shot variance ratio (γ²m − μ²)/(m − μ²) exceeds γ² whenever the
  // estimator mean is nonzero, and removing the bias moves the PEC methods
  // to a more sensitive operating point of the closed-form inversion. The
  // assertions stand as stated; the failure is a real property of the
  // gap-level comparison, not a sampling fluke (half-widths are averaged
  // over 6 repetitions above).
  EXPECT_LT(avg_hw["pvcp1"], gamma["pvcp1"] * avg_hw["vcp1"]);
  EXPECT_LT(avg_hw["pvsp"], gamma["pvsp"] * avg_hw["vsp"]);
  report(9, "shot-mode confidence-interval ordering");
}

TEST(Acceptance, Criterion10_FeedbackConvergence) {
  TaskSpec task;
  task.kind = TaskKind::multiparam_feedback;
  task.true_params = {M_PI / 4.0, M_PI / 6.0, M_PI / 6.0};
  task.encoding_count = 150;
  task.evolution_time = 1.0 / 300.0;
  task.measurement = MeasurementBasis::rotated_bell;

  // (a) Noiseless exact-probability loop converges below 1e-6 within 10
  // iterations.
  {
    NoiseModel noiseless;
    noiseless.single_qubit = {NoiseFamily::depolarizing, 0.0, {}};
    noiseless.two_qubit = {NoiseFamily::depolarizing, 0.0, {}};
    noiseless.cswap = {NoiseFamily::depolarizing, 0.0, std::nullopt};
    Rng rng(110);
    const auto history = run_feedback_loop(task, noiseless, PurificationMethod::none,
                                           PurificationConfig{}, 10, std::nullopt, rng);
    ASSERT_EQ(history.size(), 10u);
    EXPECT_LT(history.back().param_gap, 1e-6);
  }

  // (b) Noisy loop, nu = 1e5: final PVCP gap beats the unmitigated one on
  // average over 10 repetitions.
  {
    NoiseModel noise;
    noise.single_qubit = {NoiseFamily::depolarizing, 0.005, {}};
    noise.two_qubit = {NoiseFamily::depolarizing, 0.01, {}};
    noise.cswap = {NoiseFamily::depolarizing, 0.025, std::nullopt};
    PurificationConfig pvcp;
    pvcp.method = PurificationMethod::pvcp;
    pvcp.order = 2;
    pvcp.layers = 1;
    pvcp.pec_mode = PecMode::exact_branch_sum;

    double none_total = 0.0, pvcp_total = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
      Rng rng_none(derive_seed(2026, rep));
      none_total += run_feedback_loop(task, noise, PurificationMethod::none,
                                      PurificationConfig{}, 10, 100000, rng_none)
                        .back()
                        .param_gap;
      Rng rng_pvcp(derive_seed(4052, rep));
      pvcp_total += run_feedback_loop(task, noise, PurificationMethod::pvcp, pvcp, 10, 100000,
                                      rng_pvcp)
                        .back()
                        .param_gap;
    }
    EXPECT_LT(pvcp_total / 10.0, none_total / 10.0);
  }
  report(10, "sequential feedback convergence and mitigation advantage");
}

TEST(Acceptance, Criterion11_RobustnessToCorrelatedNoiseAndMiscalibration) {
  for (const auto family : {NoiseFamily::depolarizing, NoiseFamily::dephasing}) {
    for (int n : {100, 500}) {
      ExperimentSpec spec = reference_multiparam_spec();
      spec.task.encoding_count = n;
      spec.noise.cswap = {family, 0.05, 0.01};

      spec.mitigation.method = PurificationMethod::none;
      const double noisy_gap = run_experiment(spec).front().gap;

      spec.mitigation.method = PurificationMethod::pvcp;
      spec.pec_assumed_noise = NoiseSpec{family, 0.055, {}};
      const double pvcp_gap = optimal_layer_gap(run_experiment(spec));
      EXPECT_LT(pvcp_gap, noisy_gap) << to_string(family) << " N=" << n;
    }
  }

  // PVSP under the dephasing variant: a 10% miscalibrated PEC changes
  // nothing relative to perfect calibration (computational-basis readout).
  for (int n : {100, 500}) {
    ExperimentSpec spec = reference_multiparam_spec();
    spec.task.encoding_count = n;
    spec.noise.cswap = {NoiseFamily::dephasing, 0.05, 0.01};
    spec.mitigation.method = PurificationMethod::pvsp;
    spec.pec_assumed_noise = NoiseSpec{NoiseFamily::dephasing, 0.055, {}};
    const double mismatched = run_experiment(spec).front().gap;
    spec.pec_assumed_noise = NoiseSpec{NoiseFamily::dephasing, 0.05, {}};
    const double calibrated = run_experiment(spec).front().gap;
    EXPECT_LT(std::abs(mismatched - calibrated), 1e-9) << "N=" << n;
  }
  report(11, "robustness to correlated cSWAP noise with miscalibrated PEC");
}

#ifdef VPURIFY_CLI_PATH

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

TEST(Acceptance, Criterion12_ByteIdenticalReruns) {
  const std::string dir = ::testing::TempDir();
  const std::string cfg_path = dir + "/acc12.cfg";
  {
    RunConfig config;
    config.spec.task.kind = TaskKind::zeeman_sequential;
    config.spec.task.true_params = {1e-4};
    config.spec.task.encoding_count = 10;
    config.spec.task.measurement = MeasurementBasis::ghz_y;
    config.spec.noise.single_qubit = {NoiseFamily::depolarizing, 0.001, {}};
    config.spec.noise.two_qubit = {NoiseFamily::depolarizing, 0.01, {}};
    config.spec.noise.cswap = {NoiseFamily::depolarizing, 0.05, std::nullopt};
    config.spec.mitigation.method = PurificationMethod::pvcp;
    config.spec.mitigation.pec_mode = PecMode::monte_carlo;
    config.spec.mitigation.layers = 2;
    config.spec.shots = 2000;
    config.spec.trials = 2;
    std::ofstream out(cfg_path);
    out << to_text(config);
  }
  const std::vector<std::string> invocations = {
      "run --config " + cfg_path,
      "scan-n --task zeeman --N 5 10 --methods none vcp pvcp --shots 400 --trials 2",
      "scan-n --N 5 --methods none pvsp --shots 400 --trials 2",
      "noise-locations --p 0 0.02 0.05",
      "cost-compare",
      "theorem1",
      "scaling",
      "feedback --N 5 --iterations 2 --shots 200 --trials 1 --methods none pvcp",
      "robustness --N 5",
  };
  int index = 0;
  for (const auto& invocation : invocations) {
    const std::string out_a = dir + "/acc12_" + std::to_string(index) + "_a.csv";
    const std::string out_b = dir + "/acc12_" + std::to_string(index) + "_b.csv";
    for (const auto& out : {out_a, out_b}) {
      const std::string cmd = std::string(VPURIFY_CLI_PATH) + " " + invocation +
                              " --seed 31337 --out " + out + " >/dev/null 2>&1";
      ASSERT_EQ(WEXITSTATUS(std::system(cmd.c_str())), 0) << invocation;
    }
    const std::string a = slurp(out_a);
    EXPECT_FALSE(a.empty()) << invocation;
    EXPECT_EQ(a, slurp(out_b)) << invocation;
    ++index;
  }
  report(12, "seeded subcommands rerun byte-identically");
}

#endif  // VPURIFY_CLI_PATH

}  // namespace
}  // namespace vpurify
