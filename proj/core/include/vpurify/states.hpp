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

#include <string>

#include "vpurify/linalg.hpp"

namespace vpurify {

/// Hermitian, unit-trace, positive-semidefinite matrix over a power-of-2
/// dimension. Validation is opt-in at construction (it costs an O(d^3)
/// eigendecomposition) and mandatory at module boundaries.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kEigenvalueFloor = -1e-9;

  DensityMatrix() = default;
  explicit DensityMatrix(ComplexMatrix m, bool validate_now = false);

  static DensityMatrix validated(ComplexMatrix m) { return DensityMatrix(std::move(m), true); }

  const ComplexMatrix& matrix() const { return mat_; }
  ComplexMatrix& matrix() { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  int qubits() const { return log2_exact(dim()); }

  /// Throws std::domain_error when Hermiticity, unit trace, or positivity
  /// fails its tolerance.
  void validate() const;

 private:
  ComplexMatrix mat_;
};

/// tr(obs · rho). Throws on non-Hermitian observables, dimension mismatch,
/// or a residual imaginary part above 1e-10.
double expectation(const ComplexMatrix& obs, const DensityMatrix& rho);
double expectation(const ComplexMatrix& obs, const ComplexMatrix& rho);

// --- Pauli operators -------------------------------------------------------

ComplexMatrix pauli(char label);                     // 'I','X','Y','Z'
ComplexMatrix pauli_string(const std::string& label);
/// Base-4 index (digit order: most significant digit = leftmost qubit,
/// 0=I 1=X 2=Y 3=Z).
ComplexMatrix pauli_by_index(int index, int n_qubits);
std::string pauli_label_from_index(int index, int n_qubits);

// --- Gates -----------------------------------------------------------------

ComplexMatrix hadamard();
ComplexMatrix cnot();  // control = first (most significant) qubit
ComplexMatrix swap_gate();
ComplexMatrix cswap_gate();  // qubits: control, a, b

/// Controlled cyclic shift of m registers of n qubits each (control is the
/// extra leading qubit). The forward cycle sends register k's content to
/// register k-1 (the first register receives the second's content, the last
/// receives the first's). With m = 2 this is the controlled register SWAP.
ComplexMatrix controlled_register_cycle(int m, int n, bool inverse);

// --- States and measurement bases ------------------------------------------

Eigen::VectorXcd ket(int index, int dim);
Eigen::VectorXcd plus_ket();
DensityMatrix pure_state(const Eigen::VectorXcd& psi);
DensityMatrix maximally_mixed(int n_qubits);

/// Bell vectors |φ_1..4⟩: (|00⟩+|11⟩)/√2, (|00⟩−|11⟩)/√2,
/// (|10⟩+|01⟩)/√2, (|10⟩−|01⟩)/√2.
Eigen::VectorXcd bell_ket(int k);  // k in 1..4
/// Unitary sending |φ_k⟩ → |k−1⟩; measuring computationally after it
/// realizes the Bell-state measurement.
ComplexMatrix bell_measurement_unitary();
/// e^{iπ/(3√3)(X+Y+Z)}; cyclically rotates the Pauli axes.
ComplexMatrix axis_cycle_rotation();
/// Unitary sending the rotated Bell vector (R⊗I)|φ_k⟩ → |k−1⟩.
ComplexMatrix rotated_bell_measurement_unitary();

Eigen::VectorXcd ghz_ket(int n_qubits);
Eigen::VectorXcd ghz_y_ket(int n_qubits);  // (|0..0⟩ − i|1..1⟩)/√2
ComplexMatrix ghz_y_projector(int n_qubits);
/// Unitary sending |GHZ_y⟩ → |0..01⟩ (and its orthogonal GHZ partner to
/// |0..0⟩); computational outcome 1 then measures P_y.
ComplexMatrix ghz_y_measurement_unitary(int n_qubits);
/// Unitary preparing |GHZ_n⟩ from |0..0⟩ (Hadamard + CNOT ladder collapsed
/// into one operator).
ComplexMatrix ghz_preparation_unitary(int n_qubits);

// --- Encoding unitaries (closed-form 2x2 exponentials) ----------------------

/// H(λ) = B(sinθcosφ X + sinθsinφ Y + cosθ Z).
ComplexMatrix field_hamiltonian(double b, double theta, double phi);
/// e^{−iH(λ)t} on one qubit, via the closed form cos(Bt)I − i sin(Bt) n̂·σ.
ComplexMatrix spin_evolution(double b, double theta, double phi, double t);
/// U_λ = e^{−iH(λ)t} ⊗ I_2 acting on the two-qubit probe.
ComplexMatrix field_encoding_unitary(double b, double theta, double phi, double t);
/// One Zeeman step e^{−iλZ/2} on one qubit.
ComplexMatrix zeeman_step(double lambda);

}  // namespace vpurify
