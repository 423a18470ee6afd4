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

#include <cmath>
#include <iostream>

#include <CLI11.hpp>

#include "vpurify/analysis.hpp"
#include "vpurify/emit.hpp"

namespace vpurify {
namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = 20260808ULL;
  bool seed_set = false;
  bool out_set = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "config file (schema = 1)");
  cmd->add_option("--out", flags.out_path, "output path")->each([&](const std::string&) {
    flags.out_set = true;
  });
  cmd->add_option("--format", flags.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", flags.seed, "64-bit master seed")->each([&](const std::string&) {
    flags.seed_set = true;
  });
}

RunConfig base_config(const CommonFlags& flags) {
  RunConfig config;
  if (!flags.config_path.empty()) config = load_config(flags.config_path);
  if (flags.seed_set) config.spec.master_seed = flags.seed;
  if (flags.out_set) config.out_path = flags.out_path;
  config.format = output_format_from_string(flags.format);
  return config;
}

ExperimentSpec multiparam_defaults() {
  ExperimentSpec spec;
  spec.task.kind = TaskKind::multiparam_sequential;
  spec.task.true_params = {1.0, 0.9, 0.8};
  spec.task.evolution_time = 0.001;
  spec.task.encoding_count = 100;
  spec.task.measurement = MeasurementBasis::bell;
  spec.noise.single_qubit = {NoiseFamily::depolarizing, 0.001, {}};
  spec.noise.two_qubit = {NoiseFamily::depolarizing, 0.01, {}};
  spec.noise.cswap = {NoiseFamily::depolarizing, 0.05, std::nullopt};
  spec.mitigation.order = 2;
  spec.mitigation.layers = 3;
  spec.mitigation.pec_mode = PecMode::exact_branch_sum;
  spec.master_seed = 20260808ULL;
  return spec;
}

ExperimentSpec zeeman_defaults() {
  ExperimentSpec spec = multiparam_defaults();
  spec.task.kind = TaskKind::zeeman_sequential;
  spec.task.true_params = {M_PI / 4.0 * 1e-4};
  spec.task.evolution_time = 1.0;
  spec.task.measurement = MeasurementBasis::ghz_y;
  spec.mitigation.layers = 5;
  return spec;
}

ExperimentSpec feedback_defaults() {
  ExperimentSpec spec;
  spec.task.kind = TaskKind::multiparam_feedback;
  spec.task.true_params = {M_PI / 4.0, M_PI / 6.0, M_PI / 6.0};
  spec.task.encoding_count = 150;
  spec.task.evolution_time = 1.0 / 300.0;
  spec.task.measurement = MeasurementBasis::rotated_bell;
  spec.noise.single_qubit = {NoiseFamily::depolarizing, 0.005, {}};
  spec.noise.two_qubit = {NoiseFamily::depolarizing, 0.01, {}};
  spec.noise.cswap = {NoiseFamily::depolarizing, 0.025, std::nullopt};
  spec.mitigation.order = 2;
  spec.mitigation.layers = 1;
  spec.mitigation.pec_mode = PecMode::exact_branch_sum;
  spec.shots = 100000;
  spec.trials = 10;
  spec.feedback_iterations = 10;
  spec.master_seed = 20260808ULL;
  return spec;
}

std::vector<PurificationMethod> parse_methods(const std::vector<std::string>& names) {
  std::vector<PurificationMethod> methods;
  for (const auto& n : names) methods.push_back(purification_method_from_string(n));
  return methods;
}

void apply_scan_axes(const RunConfig& config, std::vector<int>& n_values,
                     std::vector<std::string>& methods) {
  if (!config.scan.n_values.empty()) n_values = config.scan.n_values;
  if (!config.scan.methods.empty()) methods = config.scan.methods;
}

// Run one method over a task, selecting the optimal layer for layered
// methods; returns the kept records.
std::vector<EstimateRecord> run_at_optimal_layer(const ExperimentSpec& spec) {
  auto records = run_experiment(spec);
  const bool layered = spec.mitigation.method == PurificationMethod::vcp ||
                       spec.mitigation.method == PurificationMethod::pvcp;
  if (!layered || records.empty()) return records;
  const int best = select_optimal_layer(records);
  std::erase_if(records, [&](const EstimateRecord& r) { return r.layers != best; });
  return records;
}

int cmd_run(const CommonFlags& flags, int n_flag, int order_flag, int layers_flag,
            long shots_flag, int trials_flag, const std::vector<double>& p_values) {
  if (flags.config_path.empty()) {
    std::cerr << "run requires --config\n";
    return 2;
  }
  RunConfig config = base_config(flags);
  if (n_flag > 0) config.spec.task.encoding_count = n_flag;
  if (order_flag > 0) config.spec.mitigation.order = order_flag;
  if (layers_flag > 0) config.spec.mitigation.layers = layers_flag;
  if (shots_flag >= 0)
    config.spec.shots = shots_flag == 0 ? std::optional<long>{} : std::optional<long>(shots_flag);
  if (trials_flag > 0) config.spec.trials = trials_flag;
  if (!p_values.empty()) config.spec.noise.cswap.local_rate = p_values.front();
  auto records = run_experiment(config.spec);
  attach_confidence_intervals(records);
  sort_records(records);
  emit(records, config.format, config.out_path);
  std::cerr << "run: " << records.size() << " records -> " << config.out_path << "\n";
  return 0;
}

int cmd_scan_n(const CommonFlags& flags, std::string task_name, std::vector<int> n_values,
               std::vector<std::string> method_names, std::optional<long> shots_flag,
               int trials_flag, int order_flag, int layers_flag) {
  RunConfig config = base_config(flags);
  ExperimentSpec base =
      task_name == "zeeman" ? zeeman_defaults() : multiparam_defaults();
  if (!flags.config_path.empty()) base = config.spec;
  if (flags.seed_set) base.master_seed = flags.seed;
  apply_scan_axes(config, n_values, method_names);
  if (shots_flag) base.shots = *shots_flag == 0 ? std::optional<long>{} : shots_flag;
  if (trials_flag > 0) base.trials = trials_flag;
  if (order_flag > 0) base.mitigation.order = order_flag;
  if (layers_flag > 0) base.mitigation.layers = layers_flag;

  std::vector<EstimateRecord> all;
  for (const auto method : parse_methods(method_names)) {
    for (int n : n_values) {
      ExperimentSpec spec = base;
      spec.task.encoding_count = n;
      spec.mitigation.method = method;
      auto records = run_at_optimal_layer(spec);
      all.insert(all.end(), records.begin(), records.end());
      std::cerr << "scan-n " << to_string(method) << " N=" << n << " done\n";
    }
  }
  attach_confidence_intervals(all);
  sort_records(all);
  emit(all, config.format, config.out_path);
  return 0;
}

int cmd_noise_locations(const CommonFlags& flags, std::vector<double> rates,
                        std::vector<int> regions, const std::string& family_name) {
  RunConfig config = base_config(flags);
  if (!config.scan.rates.empty()) rates = config.scan.rates;
  if (!config.scan.regions.empty()) regions = config.scan.regions;
  const NoiseFamily family = noise_family_from_string(family_name);

  TaskSpec task;
  task.kind = TaskKind::zeeman_sequential;
  task.true_params = {0.1};
  task.encoding_count = 5;
  task.measurement = MeasurementBasis::ghz_y;
  NoiseModel noise;
  noise.single_qubit = {NoiseFamily::depolarizing, 0.001, {}};
  noise.two_qubit = {NoiseFamily::depolarizing, 0.01, {}};
  noise.cswap = {family, 0.0, std::nullopt};  // region noise comes from overrides

  const TaskCircuit circuit = build_task_circuit(task, noise);
  PurificationConfig cfg;
  cfg.method = PurificationMethod::vcp;
  cfg.order = 2;
  cfg.layers = 1;

  std::vector<EstimateRecord> records;
  auto push_record = [&](const std::string& label, double rate,
                         const MethodEvaluation& eval) {
    EstimateRecord rec;
    rec.method = label;
    rec.n_encodings = task.encoding_count;
    rec.rate = rate;
    rec.layers = 1;
    rec.order = 2;
    rec.seed = config.spec.master_seed;
    rec.estimate = estimate_parameters(task, eval.probabilities);
    rec.gap = l1_gap(task.true_params, rec.estimate);
    rec.denominator = eval.denominator;
    rec.gamma = eval.gamma;
    records.push_back(std::move(rec));
  };

  for (double rate : rates) {
    for (int region : regions) {
      NoiseLocationMask mask = NoiseLocationMask::all_off();
      const QuantumChannel injected = make_channel(family, rate, 1);
      if (region == 1) mask.override1 = injected;
      else if (region == 2) mask.override2 = injected;
      else if (region == 3) mask.override3 = injected;
      else mask.override4 = injected;
      PurificationCircuit pc;
      pc.register_qubits = 1;
      pc.order = 2;
      pc.layers = 1;
      pc.blocks = {circuit.gates};
      pc.mask = mask;
      const auto outcome = purification_outcome(pc, circuit.probe);
      MethodEvaluation eval;
      eval.numerators = outcome.numerators;
      eval.denominator = outcome.denominator;
      eval.probabilities = {outcome.numerators[0] / outcome.denominator,
                            outcome.numerators[1] / outcome.denominator};
      push_record("vcp-region" + std::to_string(region), rate, eval);
    }
    const MethodEvaluation noisy = evaluate_method(
        circuit, PurificationMethod::none, cfg, noise, std::nullopt, std::nullopt, nullptr);
    push_record("none", rate, noisy);
    std::cerr << "noise-locations p=" << rate << " done\n";
  }
  attach_confidence_intervals(records);
  sort_records(records);
  emit(records, config.format, config.out_path);
  return 0;
}

int cmd_cost_compare(const CommonFlags& flags, const std::string& family_name,
                     std::vector<double> p_values) {
  RunConfig config = base_config(flags);
  std::vector<NoiseFamily> families;
  if (family_name == "all") {
    families = {NoiseFamily::depolarizing, NoiseFamily::dephasing,
                NoiseFamily::amplitude_damping};
  } else {
    families = {noise_family_from_string(family_name)};
  }
  if (p_values.empty()) {
    for (int i = 1; i <= 8; ++i) p_values.push_back(0.05 * i);
  }
  Table table;
  table.columns = {"family", "p", "ignore_cost", "pec_cost", "verdict"};
  for (const auto family : families)
    for (double p : p_values) {
      if (family == NoiseFamily::dephasing && p >= 0.5 - 1e-9) continue;
      const CostReport report = cost_comparison(family, p);
      table.rows.push_back({to_string(report.family), report.p, report.ignore_cost,
                            report.pec_cost, to_string(report.verdict)});
    }
  write_table_file(table, config.format, config.out_path);
  for (const auto& row : table.rows)
    std::cerr << "cost-compare " << std::get<std::string>(row[0]) << " p="
              << std::get<double>(row[1]) << ": " << std::get<std::string>(row[4]) << "\n";
  return 0;
}

int cmd_theorem1(const CommonFlags& flags, const std::string& family_name,
                 std::vector<double> p_values) {
  RunConfig config = base_config(flags);
  std::vector<NoiseFamily> families;
  if (family_name == "all") {
    families = {NoiseFamily::depolarizing, NoiseFamily::dephasing,
                NoiseFamily::amplitude_damping};
  } else {
    families = {noise_family_from_string(family_name)};
  }
  if (p_values.empty()) p_values = {0.1, 0.3, 0.5};

  // Fixed single-qubit demonstration circuit with Pauli region-2 noise.
  const QuantumChannel region2 =
      QuantumChannel::from_pauli_probs({0.8, 0.05, 0.05, 0.1});
  const GateSequence gates{make_gate(spin_evolution(0.4, 1.1, 0.2, 0.7), region2)};
  const DensityMatrix probe = pure_state(ket(0, 2));
  const ComplexMatrix obs = pauli('Z');
  PurificationConfig cfg;
  cfg.method = PurificationMethod::vcp;
  cfg.order = 2;
  const RatioExpectation base =
      simulate_vcp(gates, probe, obs, cfg, NoiseLocationMask{}, CswapNoiseSpec{});

  Table table;
  table.columns = {"family",  "p",          "f01_real",    "f01_imag",
                   "f_diag_ok", "ratio_shift", "num_scale_err", "eta"};
  for (const auto family : families)
    for (double p : p_values) {
      const QuantumChannel f = make_channel(family, p, 1);
      const TheoremOneReport report = check_theorem1(region2, f);
      NoiseLocationMask mask;
      mask.override1 = f;
      const double f3 = std::pow(report.f01.real(), 3);
      double ratio_shift = std::numeric_limits<double>::quiet_NaN();
      double num_scale_err = std::numeric_limits<double>::quiet_NaN();
      double eta = f3 * base.denominator;
      PurificationCircuit pc;
      pc.register_qubits = 1;
      pc.order = 2;
      pc.blocks = {gates};
      pc.mask = mask;
      RatioExpectation with_f;
      with_f.gamma = 1.0;
      run_purification_circuit(pc, probe, [&](std::span<const int>, double alpha,
                                              const ComplexMatrix& state) {
        const ComplexMatrix x_full = embed_operator(pauli('X'), {0}, 3);
        const ComplexMatrix o_full = x_full * embed_operator(obs, {2}, 3);
        with_f.numerator += alpha * (o_full * state).trace().real();
        with_f.denominator += alpha * (x_full * state).trace().real();
      });
      num_scale_err = std::abs(with_f.numerator - f3 * base.numerator);
      if (std::abs(with_f.denominator) > kDenominatorFloor)
        ratio_shift = std::abs(with_f.numerator / with_f.denominator - base.ratio);
      table.rows.push_back({to_string(family), p, report.f01.real(), report.f01.imag(),
                            std::string(report.f_diag_ok ? "true" : "false"), ratio_shift,
                            num_scale_err, eta});
    }
  write_table_file(table, config.format, config.out_path);
  std::cerr << "theorem1: " << table.rows.size() << " rows -> " << config.out_path << "\n";
  return 0;
}

int cmd_scaling(const CommonFlags& flags, const std::string& family_name, double shots) {
  RunConfig config = base_config(flags);
  ScalingScanSettings settings;
  settings.family = noise_family_from_string(family_name);
  settings.shots = shots;
  settings.n_grid = {10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000, 20000};
  if (!config.scan.n_values.empty()) settings.n_grid = config.scan.n_values;
  const auto points = scaling_scan(settings);
  Table table;
  table.columns = {"method", "m", "L", "N", "bias_sq", "variance"};
  for (const auto& pt : points)
    table.rows.push_back({pt.method, static_cast<long long>(pt.order),
                          static_cast<long long>(pt.layers),
                          static_cast<long long>(pt.n_encodings), pt.bias_sq, pt.variance});
  write_table_file(table, config.format, config.out_path);
  std::cerr << "scaling: " << table.rows.size() << " rows -> " << config.out_path << "\n";
  return 0;
}

int cmd_feedback(const CommonFlags& flags, std::vector<std::string> method_names,
                 int iterations_flag, std::optional<long> shots_flag, int trials_flag,
                 int n_flag) {
  RunConfig config = base_config(flags);
  ExperimentSpec base = feedback_defaults();
  if (!flags.config_path.empty()) base = config.spec;
  if (flags.seed_set) base.master_seed = flags.seed;
  if (iterations_flag > 0) base.feedback_iterations = iterations_flag;
  if (shots_flag) base.shots = *shots_flag == 0 ? std::optional<long>{} : shots_flag;
  if (trials_flag > 0) base.trials = trials_flag;
  if (n_flag > 0) {
    base.task.encoding_count = n_flag;
    base.task.evolution_time = 1.0 / (2.0 * n_flag);
  }
  if (!config.scan.methods.empty()) method_names = config.scan.methods;

  Table table;
  table.columns = {"method", "iteration", "trial", "prob_gap", "param_gap", "seed"};
  for (const auto method : parse_methods(method_names)) {
    for (int trial = 0; trial < base.trials; ++trial) {
      const std::uint64_t seed =
          derive_seed(base.master_seed, static_cast<std::uint64_t>(trial));
      Rng rng(seed);
      const auto history =
          run_feedback_loop(base.task, base.noise, method, base.mitigation,
                            base.feedback_iterations, base.shots, rng, base.pec_assumed_noise);
      for (const auto& rec : history)
        table.rows.push_back({to_string(method), static_cast<long long>(rec.iteration),
                              static_cast<long long>(trial), rec.prob_gap, rec.param_gap,
                              seed});
      std::cerr << "feedback " << to_string(method) << " trial " << trial << " done\n";
    }
  }
  write_table_file(table, config.format, config.out_path);
  return 0;
}

int cmd_robustness(const CommonFlags& flags, std::vector<int> n_values, double assumed_rate) {
  RunConfig config = base_config(flags);
  ExperimentSpec base = multiparam_defaults();
  if (flags.seed_set) base.master_seed = flags.seed;
  if (!config.scan.n_values.empty()) n_values = config.scan.n_values;

  std::vector<EstimateRecord> all;
  const std::vector<std::pair<std::string, NoiseFamily>> variants = {
      {"dp", NoiseFamily::depolarizing}, {"pf", NoiseFamily::dephasing}};
  for (const auto& [tag, family] : variants) {
    for (int n : n_values) {
      for (const auto method :
           {PurificationMethod::none, PurificationMethod::pvsp, PurificationMethod::pvcp}) {
        for (const bool calibrated : {false, true}) {
          if (method == PurificationMethod::none && calibrated) continue;
          ExperimentSpec spec = base;
          spec.task.encoding_count = n;
          spec.mitigation.method = method;
          spec.noise.cswap = {family, 0.05, 0.01};
          if (method != PurificationMethod::none)
            spec.pec_assumed_noise = NoiseSpec{family, calibrated ? 0.05 : assumed_rate, {}};
          auto records = run_at_optimal_layer(spec);
          for (auto& r : records) {
            r.method += "@" + tag;
            if (calibrated) r.method += "-cal";
          }
          all.insert(all.end(), records.begin(), records.end());
        }
      }
      std::cerr << "robustness " << tag << " N=" << n << " done\n";
    }
  }
  attach_confidence_intervals(all);
  sort_records(all);
  emit(all, config.format, config.out_path);
  return 0;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"virtual-purification error-mitigation toolkit"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string task_name = "multiparam";
  std::string family_name = "all";
  std::vector<int> n_values{10, 50, 100, 200, 500, 800, 1000};
  std::vector<int> robustness_n{100, 500};
  std::vector<double> p_values;
  std::vector<double> location_rates;
  for (int i = 0; i < 10; ++i) location_rates.push_back(0.05 * i / 9.0);
  std::vector<int> regions{1, 2, 4};
  std::vector<std::string> method_names{"none", "vsp", "vcp", "pvsp", "pvcp"};
  long shots_flag = -1;
  int trials_flag = -1, order_flag = -1, layers_flag = -1, iterations_flag = -1, n_flag = -1;
  double scaling_shots = 1e6;
  double assumed_rate = 0.055;

  auto* run = app.add_subcommand("run", "run one experiment from a config file");
  add_common(run, flags);
  run->add_option("--N", n_flag, "override encoding count");
  run->add_option("--m", order_flag, "override purification order");
  run->add_option("--layers", layers_flag, "override layer budget");
  run->add_option("--shots", shots_flag, "override shots (0 = exact)");
  run->add_option("--trials", trials_flag, "override trial count");
  run->add_option("--p", p_values, "override cswap local rate");

  auto* scan = app.add_subcommand("scan-n", "gap vs N for each method");
  add_common(scan, flags);
  scan->add_option("--task", task_name, "multiparam|zeeman")
      ->check(CLI::IsMember({"multiparam", "zeeman"}));
  scan->add_option("--N", n_values, "N grid");
  scan->add_option("--methods", method_names, "methods to compare");
  scan->add_option("--shots", shots_flag, "shots per trial (0 = exact)");
  scan->add_option("--trials", trials_flag, "trial count");
  scan->add_option("--m", order_flag, "purification order");
  scan->add_option("--layers", layers_flag, "max layers for vcp/pvcp");

  auto* locations = app.add_subcommand("noise-locations", "per-region cSWAP noise scan");
  add_common(locations, flags);
  locations->add_option("--p", location_rates, "scanned region rates");
  locations->add_option("--regions", regions, "regions to scan (1..4)");
  locations->add_option("--family", family_name, "noise family")->default_val("depolarizing");

  auto* cost = app.add_subcommand("cost-compare", "ignore-vs-PEC control-noise costs");
  add_common(cost, flags);
  cost->add_option("--family", family_name, "family or 'all'");
  cost->add_option("--p", p_values, "rates");

  auto* theorem = app.add_subcommand("theorem1", "control-noise invariance report");
  add_common(theorem, flags);
  theorem->add_option("--family", family_name, "family or 'all'");
  theorem->add_option("--p", p_values, "rates");

  auto* scaling = app.add_subcommand("scaling", "bias/variance scaling curves");
  add_common(scaling, flags);
  scaling->add_option("--family", family_name, "depolarizing|dephasing")
      ->default_val("depolarizing");
  scaling->add_option("--shots", scaling_shots, "variance-model shot count");

  auto* feedback = app.add_subcommand("feedback", "sequential feedback loop");
  add_common(feedback, flags);
  feedback->add_option("--methods", method_names, "methods to compare");
  feedback->add_option("--iterations", iterations_flag, "feedback iterations");
  feedback->add_option("--shots", shots_flag, "shots per iteration (0 = exact)");
  feedback->add_option("--trials", trials_flag, "repetitions");
  feedback->add_option("--N", n_flag, "encoding count (t = 1/(2N))");

  auto* robust = app.add_subcommand("robustness", "correlated noise + mismatched PEC");
  add_common(robust, flags);
  robust->add_option("--N", robustness_n, "N values");
  robust->add_option("--assumed-rate", assumed_rate, "PEC-assumed local rate");

  CLI11_PARSE(app, argc, argv);

  if (flags.out_path.empty())
    flags.out_path = app.get_subcommands().front()->get_name() + ".out." +
                     (flags.format == "json" ? "json" : "csv");
  flags.out_set = true;

  try {
    if (run->parsed())
      return cmd_run(flags, n_flag, order_flag, layers_flag, shots_flag, trials_flag, p_values);
    if (scan->parsed())
      return cmd_scan_n(flags, task_name, n_values, method_names,
                        shots_flag >= 0 ? std::optional<long>(shots_flag) : std::nullopt,
                        trials_flag, order_flag, layers_flag);
    if (locations->parsed())
      return cmd_noise_locations(flags, location_rates, regions,
                                 family_name == "all" ? "depolarizing" : family_name);
    if (cost->parsed()) return cmd_cost_compare(flags, family_name, p_values);
    if (theorem->parsed()) return cmd_theorem1(flags, family_name, p_values);
    if (scaling->parsed())
      return cmd_scaling(flags, family_name == "all" ? "depolarizing" : family_name,
                         scaling_shots);
    if (feedback->parsed())
      return cmd_feedback(flags, method_names, iterations_flag,
                          shots_flag >= 0 ? std::optional<long>(shots_flag) : std::nullopt,
                          trials_flag, n_flag);
    if (robust->parsed()) return cmd_robustness(flags, robustness_n, assumed_rate);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace vpurify

int main(int argc, char** argv) { return vpurify::run_cli(argc, argv); }
