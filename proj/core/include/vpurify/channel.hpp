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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vpurify/states.hpp"

namespace vpurify {

enum class ChannelForm { kraus, pauli_mixture, superoperator };

enum class NoiseFamily { depolarizing, dephasing, amplitude_damping, pauli_table };

std::string to_string(NoiseFamily f);
NoiseFamily noise_family_from_string(const std::string& s);

/// CPTP map on n qubits in Kraus, Pauli-mixture, or superoperator
/// (column-stacking) form. Values are immutable once built; validation is
/// explicit so inner loops stay cheap.
class QuantumChannel {
 public:
  /// Default-constructed channels are the single-qubit identity.
  QuantumChannel() : n_qubits_(1), form_(ChannelForm::pauli_mixture),
                     pauli_probs_{1.0, 0.0, 0.0, 0.0} {}

  static QuantumChannel identity(int n_qubits);
  static QuantumChannel from_kraus(std::vector<ComplexMatrix> kraus, bool validate_now = true);
  static QuantumChannel from_pauli_probs(std::vector<double> probs, bool validate_now = true);
  static QuantumChannel from_superoperator(ComplexMatrix superop, bool validate_now = true);
  /// Unitary conjugation channel ρ → UρU†.
  static QuantumChannel from_unitary(const ComplexMatrix& u);

  ChannelForm form() const { return form_; }
  int qubits() const { return n_qubits_; }
  int dim() const { return 1 << n_qubits_; }

  const std::vector<ComplexMatrix>& kraus() const;
  const std::vector<double>& pauli_probs() const;
  const ComplexMatrix& superoperator() const;

  /// Kraus completeness / probability normalization / Choi PSD +
  /// trace preservation, per form. Throws std::domain_error.
  void validate() const;

  ComplexMatrix to_superoperator() const;
  ComplexMatrix choi_matrix() const;
  /// Kraus operators in any form (superoperator goes through the Choi
  /// eigendecomposition).
  std::vector<ComplexMatrix> kraus_operators() const;
  /// Conversion to a Pauli mixture; requires the PTM to be diagonal to
  /// 1e-10, otherwise throws (non-Pauli noise is never silently relabeled).
  QuantumChannel to_pauli_mixture() const;

  /// Diagonal of the Pauli transfer matrix, tr(P_a E(P_a))/2^n.
  std::vector<double> ptm_diagonal() const;

  /// Apply to a same-dimension state.
  ComplexMatrix apply_full(const ComplexMatrix& rho) const;

 private:
  int n_qubits_ = 0;
  ChannelForm form_ = ChannelForm::kraus;
  std::vector<ComplexMatrix> kraus_;
  std::vector<double> pauli_probs_;
  ComplexMatrix superop_;
};

/// Channel applied on the listed qubits of a larger register (identity
/// elsewhere). `targets` are qubit indices, most significant first.
ComplexMatrix apply_channel(const QuantumChannel& ch, const ComplexMatrix& state,
                            const std::vector<int>& targets, int total_qubits);
DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& rho,
                    const std::vector<int>& targets, int total_qubits);

/// In-place Pauli-conjugation accumulation: out += w · P ρ P† for the Pauli
/// with the given X/Z bit masks. The workhorse behind Pauli-mixture
/// application.
void accumulate_pauli_conjugation(ComplexMatrix& out, const ComplexMatrix& rho, long xmask,
                                  long zmask, double weight);

/// a ∘ b (a applied after b); result in superoperator form, or Pauli form
/// when both inputs are Pauli mixtures.
QuantumChannel compose(const QuantumChannel& a, const QuantumChannel& b);

/// (1/4^n) Σ_P [P†] ∘ ch ∘ [P]; yields the Pauli mixture with ch's PTM
/// diagonal.
QuantumChannel pauli_twirl(const QuantumChannel& ch);

/// E^(m): reweights a Pauli mixture to p_i^m / Σ_j p_j^m. m must be ≥ 1.
QuantumChannel purified_channel(const QuantumChannel& pauli_mixture, int m);

struct TheoremOneReport {
  std::vector<double> e_values;  // tr(E_i E_i†)/2^n per error operator
  bool orthogonal = false;       // |tr(E_i E_j†)| < 1e-10 for all i ≠ j
  Complex f01{0.0, 0.0};         // coefficient of F on |0⟩⟨1|
  bool f_diag_ok = false;        // F maps off-diagonals to scaled off-diagonals,
                                 // diagonals to diagonals (to 1e-10)
  double orthogonality_deviation = 0.0;  // max |tr(E_i E_j†)|/2^n over i ≠ j
  double f_structure_deviation = 0.0;    // max leakage outside the required pattern
};

class TheoremConditionError : public std::domain_error {
 public:
  TheoremConditionError(const std::string& what, TheoremOneReport report)
      : std::domain_error(what), report(std::move(report)) {}
  TheoremOneReport report;
};

/// Ê^(m) with weights p_i^m e_i^{m−1} / P̂_m. Reduces to purified_channel
/// when all e_i = 1 (Pauli case). The returned channel is the normalized
/// effective map of the purified circuit; for nonunital error operators it
/// need not be trace preserving.
struct GeneralizedPurified {
  QuantumChannel channel;
  double p_hat_m = 0.0;  // P̂_m = Σ p_i^m e_i^{m−1}
};
GeneralizedPurified generalized_purified_channel(const QuantumChannel& ch, int m);

/// Error-operator decomposition used for the generalized purification:
/// each Kraus operator is scaled to unit spectral norm (E_i), with weight
/// p_i the squared scale. Pauli mixtures keep e_i = 1 analytically.
struct ErrorOperatorDecomposition {
  std::vector<double> p;
  std::vector<double> e;
  std::vector<ComplexMatrix> ops;
};
ErrorOperatorDecomposition error_operator_decomposition(const QuantumChannel& ch);

TheoremOneReport check_theorem1(const QuantumChannel& e_channel,
                                const QuantumChannel& f_channel);

/// Standard noise families. Depolarizing is the n-qubit global channel
/// ρ → (1−p)ρ + (p/2^n) I tr(ρ); dephasing and amplitude damping tensor the
/// single-qubit channel across the n qubits. pauli_table takes the explicit
/// single-qubit probabilities (I, X, Y, Z), tensored per qubit.
QuantumChannel make_channel(NoiseFamily family, double p, int n_qubits,
                            const std::vector<double>* pauli_probs_1q = nullptr);

/// §-style correlated cSWAP noise: three local channels at rate p0 composed
/// with one global channel at rate p1 on the 3 involved qubits. Global
/// dephasing is (1−p1)I + p1 [Z⊗Z⊗Z]. Families: depolarizing, dephasing.
QuantumChannel make_correlated_cswap_noise(NoiseFamily family, double p0, double p1);

struct NoiseSpec {
  NoiseFamily family = NoiseFamily::depolarizing;
  double rate = 0.0;
  std::vector<double> pauli_probs;  // used when family == pauli_table

  QuantumChannel channel(int n_qubits) const;
  bool operator==(const NoiseSpec&) const = default;
};

struct CswapNoiseSpec {
  NoiseFamily family = NoiseFamily::depolarizing;
  double local_rate = 0.0;
  std::optional<double> global_rate;  // set → correlated 3-qubit channel

  bool correlated() const { return global_rate.has_value(); }
  bool operator==(const CswapNoiseSpec&) const = default;
};

struct NoiseModel {
  NoiseSpec single_qubit;
  NoiseSpec two_qubit;
  CswapNoiseSpec cswap;

  void validate() const;  // all rates in [0, 1]
  bool operator==(const NoiseModel&) const = default;
};

}  // namespace vpurify
