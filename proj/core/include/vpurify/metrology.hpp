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

#include <array>

#include "vpurify/purification.hpp"

namespace vpurify {

enum class TaskKind {
  zeeman_sequential,
  zeeman_parallel,
  multiparam_sequential,
  multiparam_feedback
};
enum class MeasurementBasis { ghz_y, bell, rotated_bell };

std::string to_string(TaskKind k);
TaskKind task_kind_from_string(const std::string& s);
std::string to_string(MeasurementBasis b);
MeasurementBasis measurement_basis_from_string(const std::string& s);

struct TaskSpec {
  TaskKind kind = TaskKind::multiparam_sequential;
  std::vector<double> true_params;  // one value (Zeeman λ) or three (B, θ, φ)
  int encoding_count = 1;           // N
  double evolution_time = 1.0;      // t (fixed to 1 for Zeeman tasks)
  MeasurementBasis measurement = MeasurementBasis::bell;

  bool zeeman() const {
    return kind == TaskKind::zeeman_sequential || kind == TaskKind::zeeman_parallel;
  }
  bool multiparam() const { return !zeeman(); }
  void validate() const;
  bool operator==(const TaskSpec&) const = default;
};

struct OutcomeDistribution {
  std::vector<double> probs;
  void validate(double tol = 1e-10) const;
};

/// Closed-form Bell-measurement probabilities of the three-parameter field
/// task: cos²(BtN), sin²(BtN)cos²θ, sin²(BtN)sin²θcos²φ, sin²(BtN)sin²θsin²φ.
OutcomeDistribution multiparam_probabilities(const std::array<double, 3>& params, double t,
                                             int n_encodings);

struct MultiparamEstimate {
  std::array<double, 3> params{0.0, 0.0, 0.0};
  bool angles_defined = true;  // false at BtN ≈ 0 mod π (θ, φ unidentifiable)
};

/// Principal-branch inversion of the closed form; all square-root arguments
/// are clamped to [0, 1], so post-mitigation overshoots never throw.
MultiparamEstimate invert_multiparam(const OutcomeDistribution& dist, double t, int n_encodings);

/// λ̂ = arcsin(clamp(1 − 2 p_y)) / count.
double zeeman_estimator(double p_y, int count);

struct MleResult {
  std::array<double, 3> params{0.0, 0.0, 0.0};
  double loss = 0.0;
  bool improved = true;  // false when no start beat the initial point
};

using ProbabilityModel = std::function<OutcomeDistribution(const std::array<double, 3>&)>;

/// Minimizes the negative log-likelihood −ν Σ_x P̂(x) log Q(x) (probability
/// floor 1e-12 inside the log) with Nelder-Mead from the initial point plus
/// 8 random restarts in a ±20% box.
MleResult mle_fit(const OutcomeDistribution& empirical, const ProbabilityModel& model,
                  double shots, const std::array<double, 3>& init, Rng& rng);

/// Noise-free outcome probabilities of the feedback circuit: N repetitions
/// of (control V · encoding) on the entangled probe, measured in the task
/// basis. V acts on the encoded qubit only.
OutcomeDistribution feedback_model_probabilities(const ComplexMatrix& control_1q,
                                                 const std::array<double, 3>& params, double t,
                                                 int n_encodings, MeasurementBasis basis);

// --- Task circuits and method evaluation -------------------------------------

/// A fully noisy-attributed circuit: prepared probe plus the gate sequence
/// (encoding, optional controls, measurement preparation), each gate with
/// its gate-class noise channel. The final measurement is computational.
struct TaskCircuit {
  DensityMatrix probe;
  GateSequence gates;
  int register_qubits = 1;
  int outcome_count = 2;
};

TaskCircuit build_task_circuit(const TaskSpec& task, const NoiseModel& noise,
                               const ComplexMatrix* feedback_control_1q = nullptr);

struct MethodEvaluation {
  std::vector<double> probabilities;  // mitigated outcome probabilities
  std::vector<double> numerators;     // ⟨X ⊗ Π_x⟩ estimates (empty for method none)
  double denominator = 1.0;           // ⟨X ⊗ I⟩ estimate (η), 1 for method none
  double gamma = 1.0;
};

/// Deterministic part of a method run: the exact outcome state (method
/// none) or the branch-summed purification outcome. Reusable across trials
/// of the same circuit. Beyond the branch enumeration cap the circuit is
/// kept instead and every shot simulates one freshly drawn branch
/// (Monte-Carlo is mandatory there).
struct PreparedMethod {
  std::vector<double> exact_probs;             // method none
  std::optional<PurificationOutcome> outcome;  // purification methods
  std::optional<PurificationCircuit> over_cap_circuit;
  DensityMatrix over_cap_input;
};

PreparedMethod prepare_method(const TaskCircuit& circuit, PurificationMethod method,
                              const PurificationConfig& config, const NoiseModel& noise,
                              const std::optional<NoiseSpec>& pec_assumed, Rng* rng = nullptr);

/// Exact expectations (shots absent) or ν joint samples with a fresh PEC
/// branch drawn per shot.
MethodEvaluation evaluate_prepared(const PreparedMethod& prepared, std::optional<long> shots,
                                   Rng* rng);

/// prepare_method + evaluate_prepared in one call.
MethodEvaluation evaluate_method(const TaskCircuit& circuit, PurificationMethod method,
                                 const PurificationConfig& config, const NoiseModel& noise,
                                 const std::optional<NoiseSpec>& pec_assumed,
                                 std::optional<long> shots, Rng* rng);

// --- Sequential feedback loop -------------------------------------------------

struct FeedbackRecord {
  int iteration = 0;
  std::array<double, 3> estimate{0.0, 0.0, 0.0};
  double param_gap = 0.0;            // ‖λ − λ̂‖₁
  double prob_gap = 0.0;             // ‖P̂_V − P_V‖₁
  std::vector<double> empirical;     // P̂_V
  bool control_was_identity = false;
};

/// Iterates simulate → sample → MLE → V = U†_λ̂, starting from the identity
/// control. Returns one record per iteration.
std::vector<FeedbackRecord> run_feedback_loop(const TaskSpec& task, const NoiseModel& noise,
                                              PurificationMethod method,
                                              const PurificationConfig& config, int iterations,
                                              std::optional<long> shots, Rng& rng,
                                              const std::optional<NoiseSpec>& pec_assumed =
                                                  std::nullopt);

/// Parameter estimate from mitigated outcome probabilities via the task's
/// closed-form estimator (feedback tasks use the MLE path instead).
std::vector<double> estimate_parameters(const TaskSpec& task,
                                        const std::vector<double>& probabilities);

double l1_gap(const std::vector<double>& truth, const std::vector<double>& estimate);

}  // namespace vpurify
