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

#include <cmath>

#include "vpurify/channel.hpp"
#include "vpurify/rng.hpp"
#include "vpurify/states.hpp"

namespace vpurify::testing {

inline double gaussian(Rng& rng) {
  const double u1 = std::max(rng.uniform(), 1e-300);
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline ComplexMatrix random_complex(Rng& rng, int rows, int cols) {
  ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = Complex(gaussian(rng), gaussian(rng));
  return m;
}

inline ComplexMatrix random_hermitian(Rng& rng, int dim) {
  const ComplexMatrix g = random_complex(rng, dim, dim);
  return (g + g.adjoint()) / 2.0;
}

inline ComplexMatrix random_unitary(Rng& rng, int dim) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(random_hermitian(rng, dim));
  return es.eigenvectors();
}

inline DensityMatrix random_density(Rng& rng, int n_qubits) {
  const int dim = 1 << n_qubits;
  const ComplexMatrix g = random_complex(rng, dim, dim);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho);
}

inline std::vector<double> random_pauli_probs(Rng& rng, int n_qubits,
                                              double identity_weight = 0.7) {
  const int count = 1 << (2 * n_qubits);
  std::vector<double> probs(count);
  double rest = 0.0;
  for (int i = 1; i < count; ++i) {
    probs[i] = rng.uniform();
    rest += probs[i];
  }
  for (int i = 1; i < count; ++i) probs[i] *= (1.0 - identity_weight) / rest;
  probs[0] = identity_weight;
  return probs;
}

}  // namespace vpurify::testing
