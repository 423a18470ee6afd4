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

#include <benchmark/benchmark.h>

#include "vpurify/metrology.hpp"

namespace vpurify {
namespace {

void BM_TensorProduct(benchmark::State& state) {
  const ComplexMatrix a = pauli_string("XZ");
  const ComplexMatrix b = pauli_string("YZI");
  for (auto _ : state) benchmark::DoNotOptimize(tensor_product(a, b));
}
BENCHMARK(BM_TensorProduct);

void BM_PauliChannelApply(benchmark::State& state) {
  const QuantumChannel noise =
      make_channel(NoiseFamily::depolarizing, 0.01, static_cast<int>(state.range(0)));
  const int total = 5;
  const DensityMatrix rho = maximally_mixed(total);
  std::vector<int> targets(noise.qubits());
  for (int i = 0; i < noise.qubits(); ++i) targets[i] = i + 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(apply_channel(noise, rho.matrix(), targets, total));
}
BENCHMARK(BM_PauliChannelApply)->Arg(1)->Arg(2);

void BM_VcpSingleLayer(benchmark::State& state) {
  TaskSpec task;
  task.kind = TaskKind::multiparam_sequential;
  task.true_params = {1.0, 0.9, 0.8};
  task.evolution_time = 0.001;
  task.encoding_count = static_cast<int>(state.range(0));
  task.measurement = MeasurementBasis::bell;
  NoiseModel noise;
  noise.single_qubit = {NoiseFamily::depolarizing, 0.001, {}};
  noise.two_qubit = {NoiseFamily::depolarizing, 0.01, {}};
  noise.cswap = {NoiseFamily::depolarizing, 0.05, std::nullopt};
  const TaskCircuit circuit = build_task_circuit(task, noise);
  PurificationConfig cfg;
  cfg.method = PurificationMethod::vcp;
  for (auto _ : state)
    benchmark::DoNotOptimize(evaluate_method(circuit, PurificationMethod::vcp, cfg, noise,
                                             std::nullopt, std::nullopt, nullptr));
}
BENCHMARK(BM_VcpSingleLayer)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_PecBranchSum(benchmark::State& state) {
  TaskSpec task;
  task.kind = TaskKind::zeeman_sequential;
  task.true_params = {1e-4};
  task.encoding_count = 20;
  task.measurement = MeasurementBasis::ghz_y;
  NoiseModel noise;
  noise.single_qubit = {NoiseFamily::depolarizing, 0.001, {}};
  noise.two_qubit = {NoiseFamily::depolarizing, 0.01, {}};
  noise.cswap = {NoiseFamily::depolarizing, 0.05, std::nullopt};
  const TaskCircuit circuit = build_task_circuit(task, noise);
  PurificationConfig cfg;
  cfg.method = PurificationMethod::pvcp;
  cfg.pec_mode = PecMode::exact_branch_sum;
  cfg.layers = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(evaluate_method(circuit, PurificationMethod::pvcp, cfg, noise,
                                             std::nullopt, std::nullopt, nullptr));
}
BENCHMARK(BM_PecBranchSum)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_ShotSampling(benchmark::State& state) {
  TaskSpec task;
  task.kind = TaskKind::zeeman_sequential;
  task.true_params = {1e-4};
  task.encoding_count = 20;
  task.measurement = MeasurementBasis::ghz_y;
  NoiseModel noise;
  noise.single_qubit = {NoiseFamily::depolarizing, 0.001, {}};
  noise.two_qubit = {NoiseFamily::depolarizing, 0.01, {}};
  noise.cswap = {NoiseFamily::depolarizing, 0.05, std::nullopt};
  const TaskCircuit circuit = build_task_circuit(task, noise);
  PurificationConfig cfg;
  cfg.method = PurificationMethod::pvcp;
  cfg.pec_mode = PecMode::monte_carlo;
  cfg.layers = 2;
  const PreparedMethod prepared =
      prepare_method(circuit, PurificationMethod::pvcp, cfg, noise, std::nullopt);
  Rng rng(7);
  for (auto _ : state)
    benchmark::DoNotOptimize(evaluate_prepared(prepared, state.range(0), &rng));
}
BENCHMARK(BM_ShotSampling)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace vpurify

BENCHMARK_MAIN();
