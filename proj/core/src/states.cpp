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

#include "vpurify/states.hpp"

#include <cmath>
#include <stdexcept>

namespace vpurify {

namespace {
constexpr Complex kI{0.0, 1.0};
}

DensityMatrix::DensityMatrix(ComplexMatrix m, bool validate_now) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols() || !is_power_of_two(static_cast<int>(mat_.rows())))
    throw std::invalid_argument("DensityMatrix: dimension must be a square power of 2");
  if (validate_now) validate();
}

void DensityMatrix::validate() const {
  if (!is_hermitian(mat_, kHermitianTol))
    throw std::domain_error("DensityMatrix: not Hermitian within 1e-10");
  if (std::abs(mat_.trace().real() - 1.0) > kTraceTol || std::abs(mat_.trace().imag()) > kTraceTol)
    throw std::domain_error("DensityMatrix: trace differs from 1 beyond 1e-10");
  if (min_eigenvalue(mat_) < kEigenvalueFloor)
    throw std::domain_error("DensityMatrix: eigenvalue below -1e-9");
}

double expectation(const ComplexMatrix& obs, const ComplexMatrix& rho) {
  if (obs.rows() != rho.rows() || obs.cols() != rho.cols())
    throw std::invalid_argument("expectation: dimension mismatch");
  if (!is_hermitian(obs)) throw std::invalid_argument("expectation: observable not Hermitian");
  const Complex v = (obs * rho).trace();
  if (std::abs(v.imag()) > 1e-10)
    throw std::domain_error("expectation: imaginary part exceeds 1e-10");
  return v.real();
}

double expectation(const ComplexMatrix& obs, const DensityMatrix& rho) {
  return expectation(obs, rho.matrix());
}

ComplexMatrix pauli(char label) {
  ComplexMatrix m(2, 2);
  switch (label) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -kI, kI, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument(std::string("unknown Pauli label: ") + label);
  }
  return m;
}

ComplexMatrix pauli_string(const std::string& label) {
  if (label.empty()) throw std::invalid_argument("empty Pauli string");
  ComplexMatrix m = pauli(label[0]);
  for (std::size_t i = 1; i < label.size(); ++i) m = tensor_product(m, pauli(label[i]));
  return m;
}

namespace {
const char kPauliChars[4] = {'I', 'X', 'Y', 'Z'};
}

std::string pauli_label_from_index(int index, int n_qubits) {
  if (index < 0 || index >= (1 << (2 * n_qubits)))
    throw std::invalid_argument("Pauli index out of range");
  std::string label(n_qubits, 'I');
  for (int q = n_qubits - 1; q >= 0; --q) {
    label[q] = kPauliChars[index & 3];
    index >>= 2;
  }
  return label;
}

ComplexMatrix pauli_by_index(int index, int n_qubits) {
  return pauli_string(pauli_label_from_index(index, n_qubits));
}

ComplexMatrix hadamard() {
  ComplexMatrix m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

ComplexMatrix cnot() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

ComplexMatrix swap_gate() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 2) = 1;
  m(2, 1) = 1;
  m(3, 3) = 1;
  return m;
}

ComplexMatrix cswap_gate() { return controlled_register_cycle(2, 1, false); }

ComplexMatrix controlled_register_cycle(int m, int n, bool inverse) {
  if (m < 2 || n < 1) throw std::invalid_argument("controlled_register_cycle: need m>=2, n>=1");
  const int reg_bits = m * n;
  const long reg_dim = 1L << reg_bits;
  const long dim = reg_dim * 2;
  ComplexMatrix gate = ComplexMatrix::Zero(dim, dim);
  for (long x = 0; x < reg_dim; ++x) gate(x, x) = 1.0;  // control |0⟩ branch
  for (long x = 0; x < reg_dim; ++x) {
    // Forward cycle: register k takes register k+1's content; the last
    // register takes the first's.
    long y = 0;
    for (int r = 0; r < m; ++r) {
      const int src = inverse ? (r + m - 1) % m : (r + 1) % m;
      const long chunk = (x >> ((m - 1 - src) * n)) & ((1L << n) - 1);
      y |= chunk << ((m - 1 - r) * n);
    }
    gate(reg_dim + y, reg_dim + x) = 1.0;
  }
  return gate;
}

Eigen::VectorXcd ket(int index, int dim) {
  if (index < 0 || index >= dim) throw std::invalid_argument("ket: index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(index) = 1.0;
  return v;
}

Eigen::VectorXcd plus_ket() {
  Eigen::VectorXcd v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}

DensityMatrix pure_state(const Eigen::VectorXcd& psi) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-12)
    throw std::invalid_argument("pure_state: ket is not normalized");
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix maximally_mixed(int n_qubits) {
  const int d = 1 << n_qubits;
  return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

Eigen::VectorXcd bell_ket(int k) {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  switch (k) {
    case 1: v(0) = s; v(3) = s; break;
    case 2: v(0) = s; v(3) = -s; break;
    case 3: v(2) = s; v(1) = s; break;
    case 4: v(2) = s; v(1) = -s; break;
    default: throw std::invalid_argument("bell_ket: k must be 1..4");
  }
  return v;
}

ComplexMatrix bell_measurement_unitary() {
  ComplexMatrix u(4, 4);
  for (int k = 1; k <= 4; ++k) u.row(k - 1) = bell_ket(k).adjoint();
  return u;
}

ComplexMatrix axis_cycle_rotation() {
  // exponent = i(π/3)·M with M = (X+Y+Z)/√3, M² = I.
  const ComplexMatrix m = (pauli('X') + pauli('Y') + pauli('Z')) / std::sqrt(3.0);
  const double a = M_PI / 3.0;
  return std::cos(a) * identity_matrix(2) + kI * std::sin(a) * m;
}

ComplexMatrix rotated_bell_measurement_unitary() {
  // Basis vectors are (R⊗I)|φ_k⟩, so the premeasurement unitary is
  // B · (R†⊗I).
  return bell_measurement_unitary() *
         tensor_product(axis_cycle_rotation().adjoint(), identity_matrix(2));
}

Eigen::VectorXcd ghz_ket(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("ghz_ket: need at least 1 qubit");
  const int d = 1 << n_qubits;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
  const double s = 1.0 / std::sqrt(2.0);
  v(0) = s;
  v(d - 1) = s;
  return v;
}

Eigen::VectorXcd ghz_y_ket(int n_qubits) {
  const int d = 1 << n_qubits;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
  const double s = 1.0 / std::sqrt(2.0);
  v(0) = s;
  v(d - 1) = -kI * s;
  return v;
}

ComplexMatrix ghz_y_projector(int n_qubits) {
  const Eigen::VectorXcd g = ghz_y_ket(n_qubits);
  return g * g.adjoint();
}

ComplexMatrix ghz_y_measurement_unitary(int n_qubits) {
  const int d = 1 << n_qubits;
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd partner = Eigen::VectorXcd::Zero(d);
  partner(0) = s;
  partner(d - 1) = kI * s;
  ComplexMatrix u = ComplexMatrix::Zero(d, d);
  u.row(0) = partner.adjoint();
  u.row(1) = ghz_y_ket(n_qubits).adjoint();
  // Remaining computational states (neither |0..0⟩ nor |1..1⟩) fill the
  // leftover rows in order.
  int row = 2;
  for (int x = 1; x < d - 1; ++x) u(row++, x) = 1.0;
  return u;
}

ComplexMatrix ghz_preparation_unitary(int n_qubits) {
  const int d = 1 << n_qubits;
  ComplexMatrix u = ComplexMatrix::Zero(d, d);
  u.col(0) = ghz_ket(n_qubits);
  // Complete with Gram-Schmidt over the computational basis.
  int col = 1;
  for (int x = 0; x < d && col < d; ++x) {
    Eigen::VectorXcd v = ket(x, d);
    for (int c = 0; c < col; ++c) v -= u.col(c) * (u.col(c).adjoint() * v);
    const double nrm = v.norm();
    if (nrm > 1e-8) u.col(col++) = v / nrm;
  }
  if (col != d) throw std::logic_error("ghz_preparation_unitary: basis completion failed");
  return u;
}

ComplexMatrix field_hamiltonian(double b, double theta, double phi) {
  return b * (std::sin(theta) * std::cos(phi) * pauli('X') +
              std::sin(theta) * std::sin(phi) * pauli('Y') + std::cos(theta) * pauli('Z'));
}

ComplexMatrix spin_evolution(double b, double theta, double phi, double t) {
  const ComplexMatrix n_sigma = std::sin(theta) * std::cos(phi) * pauli('X') +
                                std::sin(theta) * std::sin(phi) * pauli('Y') +
                                std::cos(theta) * pauli('Z');
  const double a = b * t;
  return std::cos(a) * identity_matrix(2) - kI * std::sin(a) * n_sigma;
}

ComplexMatrix field_encoding_unitary(double b, double theta, double phi, double t) {
  return tensor_product(spin_evolution(b, theta, phi, t), identity_matrix(2));
}

ComplexMatrix zeeman_step(double lambda) {
  ComplexMatrix u = ComplexMatrix::Zero(2, 2);
  u(0, 0) = std::exp(-kI * (lambda / 2.0));
  u(1, 1) = std::exp(kI * (lambda / 2.0));
  return u;
}

}  // namespace vpurify
