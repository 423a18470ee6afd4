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

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace vpurify {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

// Global subsystem ordering convention: the leftmost tensor factor is the
// most significant index (control ⊗ ancilla ⊗ target throughout).

/// Kronecker product a ⊗ b.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product of a list, left to right.
ComplexMatrix tensor_all(const std::vector<ComplexMatrix>& factors);

/// Trace out every subsystem not listed in `keep`. `dims` are the subsystem
/// dimensions from most to least significant; `keep` holds indices into
/// `dims` and must be nonempty. The kept subsystems retain their order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims,
                            const std::vector<int>& keep);

/// Expand `op` (acting on the qubits listed in `targets`, most significant
/// first) to the full `total_qubits`-qubit space, identity elsewhere.
ComplexMatrix embed_operator(const ComplexMatrix& op, const std::vector<int>& targets,
                             int total_qubits);

ComplexMatrix identity_matrix(int dim);

bool is_power_of_two(int n);
int log2_exact(int dim);

double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_hermitian(const ComplexMatrix& m, double tol = 1e-10);
bool is_unitary(const ComplexMatrix& m, double tol = 1e-12);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix& hermitian);

/// Column-stacking vectorization and its inverse.
Eigen::VectorXcd vec(const ComplexMatrix& m);
ComplexMatrix unvec(const Eigen::VectorXcd& v, int rows, int cols);

}  // namespace vpurify
