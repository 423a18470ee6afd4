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

enum class PurificationMethod { none, vsp, vcp, pvsp, pvcp };
enum class AncillaRefreshMode { exact_mixed, sampled_pauli };
enum class PecMode { off, exact_branch_sum, monte_carlo };

std::string to_string(PurificationMethod m);
PurificationMethod purification_method_from_string(const std::string& s);

struct PurificationConfig {
  PurificationMethod method = PurificationMethod::none;
  int order = 2;   // m, ignored for method none
  int layers = 1;  // L, vcp/pvcp only
  AncillaRefreshMode ancilla_refresh = AncillaRefreshMode::exact_mixed;
  PecMode pec_mode = PecMode::off;

  void validate() const;
  bool operator==(const PurificationConfig&) const = default;
};

/// Noise-injection switches for the four cSWAP-noise regions of a layer:
///   region 1 — control qubit (at every cSWAP, plus the injection sites
///              at layer boundaries when an override channel is given);
///   region 2 — ancilla+target between the two cSWAP layers;
///   region 3 — ancilla after the second cSWAP layer;
///   region 4 — target after the second cSWAP layer.
/// An override replaces the attached cSWAP noise at that region with the
/// given single-qubit channel. Region-1 overrides follow the three-site
/// pattern (before the first cSWAP layer and after each cSWAP layer).
struct NoiseLocationMask {
  bool region1 = true;
  bool region2 = true;
  bool region3 = true;
  bool region4 = true;
  std::optional<QuantumChannel> override1;
  std::optional<QuantumChannel> override2;
  std::optional<QuantumChannel> override3;
  std::optional<QuantumChannel> override4;

  static NoiseLocationMask all_off() {
    NoiseLocationMask m;
    m.region1 = m.region2 = m.region3 = m.region4 = false;
    return m;
  }
};

struct RatioExpectation {
  double numerator = 0.0;    // ⟨X ⊗ O⟩
  double denominator = 0.0;  // ⟨X ⊗ I⟩
  double ratio = 0.0;
  double gamma = 1.0;        // PEC total, 1 when PEC is off
};

inline constexpr double kDenominatorFloor = 1e-12;

/// One gate of the target circuit: the register-dimension unitary and the
/// noise channel that follows it (acting on noise_targets, register-local
/// qubit indices).
struct NoisyGate {
  ComplexMatrix unitary;
  QuantumChannel noise;
  std::vector<int> noise_targets;
};
using GateSequence = std::vector<NoisyGate>;

NoisyGate make_gate(ComplexMatrix unitary, QuantumChannel noise);

/// ρ̃ = E_D ∘ U_D ∘ … ∘ E_1 ∘ U_1 (probe): the unmitigated baseline and the
/// VSP input.
DensityMatrix build_noisy_target(const GateSequence& gates, const DensityMatrix& probe);

/// Contiguous blocks, as equal as possible, remainder to the earliest.
std::vector<GateSequence> split_into_blocks(const GateSequence& gates, int layers);

/// Ancilla refresh between VCP layers. exact_mixed returns the full-twirl
/// channel (marginal becomes I/2^n); sampled_pauli draws one of the 4^n
/// Pauli strings uniformly.
struct AncillaRefreshResult {
  QuantumChannel channel;
  std::optional<int> sampled_index;
};
AncillaRefreshResult ancilla_refresh(AncillaRefreshMode mode, int n_qubits, Rng* rng);

// --- Low-level circuit walk --------------------------------------------------

/// Full specification of a purification circuit over 1 + m·n qubits
/// (control ⊗ m registers of n qubits; the last register is the target).
struct PurificationCircuit {
  int register_qubits = 1;  // n
  int order = 2;            // m
  int layers = 1;           // L; VSP uses a single permutation layer
  bool vsp = false;         // VSP: registers hold copies of the input state,
                            // one permutation layer, no gate blocks
  std::vector<GateSequence> blocks;  // per layer (empty for VSP)
  CswapNoiseSpec cswap;
  NoiseLocationMask mask;
  AncillaRefreshMode refresh = AncillaRefreshMode::exact_mixed;
  Rng* rng = nullptr;                       // required for sampled_pauli refresh
  std::vector<PecDecomposition> pec_sites;  // per (layer, target qubit); empty = PEC off
  /// Gate noise of the control preparation (the region-1 site before the
  /// first cSWAP layer); replaced by mask.override1 when that is set.
  std::optional<QuantumChannel> control_prep_noise;

  int total_qubits() const { return 1 + order * register_qubits; }
};

/// Called once per PEC branch with the branch coefficient Πα and the final
/// (1 + m·n)-qubit state. A single call with alpha = 1 when PEC is off.
using LeafVisitor =
    std::function<void(std::span<const int> branch, double alpha, const ComplexMatrix& state)>;

void run_purification_circuit(const PurificationCircuit& circuit, const DensityMatrix& input,
                              const LeafVisitor& visit);

// --- Aggregated outcomes -----------------------------------------------------

/// Exact branch-summed expectations plus the per-branch joint distribution
/// table over (control X outcome, computational target outcome) used for
/// shot sampling. numerators[x] = ⟨X ⊗ Π_x⟩ for the computational projector
/// on the target register.
struct PurificationOutcome {
  std::vector<double> numerators;
  double denominator = 0.0;
  double gamma = 1.0;
  std::vector<double> branch_probs;               // |α|-products / γ
  std::vector<int> branch_signs;                  // Π sign(α)
  std::vector<std::vector<double>> branch_joint;  // per branch: [s=+1 outcomes, s=−1 outcomes]
  // Final-layer corrections are trace preserving on the target register and
  // leave ⟨X ⊗ I⟩ untouched, so the denominator estimator reweights only
  // over the earlier layers' sites.
  std::vector<int> branch_prefix_signs;  // Π sign(α) over non-final-layer sites
  double gamma_prefix = 1.0;             // Π γ over non-final-layer sites
};

PurificationOutcome purification_outcome(const PurificationCircuit& circuit,
                                         const DensityMatrix& input);

/// ⟨X⊗O⟩, ⟨X⊗I⟩ and their ratio for an arbitrary Hermitian observable on the
/// target register. Throws std::domain_error when |denominator| < 1e-12
/// (η → 0 purification breakdown).
RatioExpectation ratio_expectation(const PurificationCircuit& circuit, const DensityMatrix& input,
                                   const ComplexMatrix& obs);

// --- Spec-level entry points -------------------------------------------------

RatioExpectation simulate_vsp(const DensityMatrix& noisy_state, const ComplexMatrix& obs, int m,
                              const std::optional<QuantumChannel>& control_noise = std::nullopt,
                              const CswapNoiseSpec& cswap = {},
                              const std::vector<PecDecomposition>& pec_sites = {});

RatioExpectation simulate_vcp(const GateSequence& gates, const DensityMatrix& probe,
                              const ComplexMatrix& obs, const PurificationConfig& config,
                              const NoiseLocationMask& mask, const CswapNoiseSpec& cswap,
                              const NoiseSpec* pec_target = nullptr, Rng* rng = nullptr);

/// PEC decompositions for the region-4 sites of a purification circuit
/// (one per target qubit per layer), built from the cSWAP noise model or
/// the explicitly assumed noise (robustness protocol).
std::vector<PecDecomposition> pec_sites_for(const CswapNoiseSpec& cswap, int register_qubits,
                                            int layers, const NoiseSpec* assumed = nullptr);

}  // namespace vpurify
