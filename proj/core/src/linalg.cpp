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

#include "vpurify/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace vpurify {

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix tensor_all(const std::vector<ComplexMatrix>& factors) {
  if (factors.empty()) throw std::invalid_argument("tensor_all: empty factor list");
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = tensor_product(out, factors[i]);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  long total = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("partial_trace: nonpositive subsystem dimension");
    total *= d;
  }
  if (m.rows() != m.cols() || m.rows() != total)
    throw std::invalid_argument("partial_trace: dims do not match matrix dimension");
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
  for (int k : keep)
    if (k < 0 || k >= static_cast<int>(dims.size()))
      throw std::invalid_argument("partial_trace: keep index out of range");

  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  for (int k : keep) kept[k] = true;

  long keep_dim = 1, trace_dim = 1;
  for (int i = 0; i < n; ++i) (kept[i] ? keep_dim : trace_dim) *= dims[i];

  // Mixed-radix strides, most significant subsystem first.
  std::vector<long> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  std::vector<int> keep_idx(keep.begin(), keep.end());
  std::sort(keep_idx.begin(), keep_idx.end());
  std::vector<int> tr_idx;
  for (int i = 0; i < n; ++i)
    if (!kept[i]) tr_idx.push_back(i);

  auto assemble = [&](long packed, const std::vector<int>& subs) {
    long full = 0;
    for (int i = static_cast<int>(subs.size()) - 1; i >= 0; --i) {
      int s = subs[i];
      full += (packed % dims[s]) * stride[s];
      packed /= dims[s];
    }
    return full;
  };

  ComplexMatrix out = ComplexMatrix::Zero(keep_dim, keep_dim);
  for (long r = 0; r < keep_dim; ++r) {
    const long rbase = assemble(r, keep_idx);
    for (long c = 0; c < keep_dim; ++c) {
      const long cbase = assemble(c, keep_idx);
      Complex acc = 0.0;
      for (long t = 0; t < trace_dim; ++t) {
        const long off = assemble(t, tr_idx);
        acc += m(rbase + off, cbase + off);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

ComplexMatrix embed_operator(const ComplexMatrix& op, const std::vector<int>& targets,
                             int total_qubits) {
  const int k = static_cast<int>(targets.size());
  const long op_dim = 1L << k;
  if (op.rows() != op_dim || op.cols() != op_dim)
    throw std::invalid_argument("embed_operator: operator dimension does not match target count");
  for (int t : targets)
    if (t < 0 || t >= total_qubits)
      throw std::invalid_argument("embed_operator: target qubit out of range");

  const long dim = 1L << total_qubits;
  std::vector<int> rest;
  std::vector<bool> is_target(total_qubits, false);
  for (int t : targets) {
    if (is_target[t]) throw std::invalid_argument("embed_operator: duplicate target");
    is_target[t] = true;
  }
  for (int q = 0; q < total_qubits; ++q)
    if (!is_target[q]) rest.push_back(q);

  // Qubit q occupies bit (total_qubits - 1 - q); targets[0] is the operator's
  // most significant slot.
  auto bit_of = [&](int q) { return total_qubits - 1 - q; };
  auto assemble = [&](long op_index, long rest_index) {
    long full = 0;
    for (int i = 0; i < k; ++i)
      if ((op_index >> (k - 1 - i)) & 1) full |= 1L << bit_of(targets[i]);
    for (std::size_t i = 0; i < rest.size(); ++i)
      if ((rest_index >> (rest.size() - 1 - i)) & 1) full |= 1L << bit_of(rest[i]);
    return full;
  };

  const long rest_dim = dim >> k;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (long i = 0; i < op_dim; ++i)
    for (long j = 0; j < op_dim; ++j) {
      const Complex v = op(i, j);
      if (v == Complex(0.0, 0.0)) continue;
      for (long r = 0; r < rest_dim; ++r) out(assemble(i, r), assemble(j, r)) = v;
    }
  return out;
}

ComplexMatrix identity_matrix(int dim) { return ComplexMatrix::Identity(dim, dim); }

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(int dim) {
  if (!is_power_of_two(dim)) throw std::invalid_argument("dimension is not a power of 2");
  int n = 0;
  while ((1 << n) < dim) ++n;
  return n;
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  return (a - b).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs_diff(m, m.adjoint()) < tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs_diff(m.adjoint() * m, identity_matrix(static_cast<int>(m.rows()))) < tol;
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Eigen::VectorXcd vec(const ComplexMatrix& m) {
  Eigen::VectorXcd v(m.size());
  long k = 0;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) v(k++) = m(r, c);
  return v;
}

ComplexMatrix unvec(const Eigen::VectorXcd& v, int rows, int cols) {
  if (v.size() != static_cast<long>(rows) * cols)
    throw std::invalid_argument("unvec: size mismatch");
  ComplexMatrix m(rows, cols);
  long k = 0;
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = v(k++);
  return m;
}

}  // namespace vpurify
