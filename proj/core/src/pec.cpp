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

#include "vpurify/pec.hpp"

#include <cmath>

namespace vpurify {

QuantumChannel pec_operation_channel(PecOperation op) {
  switch (op) {
    case PecOperation::identity: return QuantumChannel::from_unitary(pauli('I'));
    case PecOperation::x: return QuantumChannel::from_unitary(pauli('X'));
    case PecOperation::y: return QuantumChannel::from_unitary(pauli('Y'));
    case PecOperation::z: return QuantumChannel::from_unitary(pauli('Z'));
    case PecOperation::reset_zero: {
      ComplexMatrix k0 = ComplexMatrix::Zero(2, 2), k1 = ComplexMatrix::Zero(2, 2);
      k0(0, 0) = 1.0;
      k1(0, 1) = 1.0;
      return QuantumChannel::from_kraus({k0, k1}, false);
    }
  }
  throw std::logic_error("unreachable");
}

std::string to_string(PecOperation op) {
  switch (op) {
    case PecOperation::identity: return "identity";
    case PecOperation::x: return "X";
    case PecOperation::y: return "Y";
    case PecOperation::z: return "Z";
    case PecOperation::reset_zero: return "reset-to-|0>";
  }
  return "?";
}

PecDecomposition decomposition_for(NoiseFamily family, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("noise rate must lie in [0, 1]");
  PecDecomposition dec;
  dec.family = family;
  dec.rate = p;
  switch (family) {
    case NoiseFamily::depolarizing: {
      const double a = p / (4.0 * (1.0 - p));
      dec.terms = {{1.0 + 3.0 * a, PecOperation::identity},
                   {-a, PecOperation::x},
                   {-a, PecOperation::y},
                   {-a, PecOperation::z}};
      break;
    }
    case NoiseFamily::dephasing: {
      if (p >= 0.5 - 1e-9)
        throw std::domain_error("dephasing decomposition diverges at p >= 1/2");
      dec.terms = {{(1.0 - p) / (1.0 - 2.0 * p), PecOperation::identity},
                   {-p / (1.0 - 2.0 * p), PecOperation::z}};
      break;
    }
    case NoiseFamily::amplitude_damping: {
      const double r = std::sqrt(1.0 - p);
      dec.terms = {{(1.0 + r) / (2.0 * (1.0 - p)), PecOperation::identity},
                   {(1.0 - r) / (2.0 * (1.0 - p)), PecOperation::z},
                   {-p / (1.0 - p), PecOperation::reset_zero}};
      break;
    }
    case NoiseFamily::pauli_table:
      throw std::invalid_argument("no closed-form decomposition for explicit Pauli tables");
  }
  dec.gamma = 0.0;
  for (const auto& t : dec.terms) dec.gamma += std::abs(t.alpha);
  return dec;
}

double validate_inverse(const PecDecomposition& dec, const QuantumChannel& noise) {
  if (noise.qubits() != 1) throw std::invalid_argument("validate_inverse: single-qubit sites only");
  ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
  for (const auto& term : dec.terms)
    sum += term.alpha *
           (noise.to_superoperator() * pec_operation_channel(term.op).to_superoperator());
  return max_abs_diff(sum, identity_matrix(4));
}

long branch_count(std::span<const PecDecomposition> sites) {
  long count = 1;
  for (const auto& s : sites) {
    count *= static_cast<long>(s.terms.size());
    if (count > kBranchEnumerationCap) return count;  // early out, caller decides
  }
  return count;
}

double gamma_total(std::span<const PecDecomposition> sites) {
  double g = 1.0;
  for (const auto& s : sites) g *= s.gamma;
  return g;
}

void for_each_branch(std::span<const PecDecomposition> sites,
                     const std::function<void(std::span<const int>, double)>& visit) {
  if (branch_count(sites) > kBranchEnumerationCap)
    throw std::length_error("PEC branch lattice exceeds the enumeration cap of 4096");
  std::vector<int> indices(sites.size(), 0);
  std::function<void(std::size_t, double)> rec = [&](std::size_t k, double alpha) {
    if (k == sites.size()) {
      visit(indices, alpha);
      return;
    }
    for (std::size_t i = 0; i < sites[k].terms.size(); ++i) {
      indices[k] = static_cast<int>(i);
      rec(k + 1, alpha * sites[k].terms[i].alpha);
    }
  };
  rec(0, 1.0);
}

MitigatedValue exact_mitigated_expectation(
    std::span<const PecDecomposition> sites,
    const std::function<double(std::span<const int>)>& evaluator) {
  MitigatedValue out;
  out.gamma_total = gamma_total(sites);
  for_each_branch(sites, [&](std::span<const int> branch, double alpha) {
    out.value += alpha * evaluator(branch);
  });
  return out;
}

BranchSample draw_branch(std::span<const PecDecomposition> sites, Rng& rng) {
  BranchSample sample;
  sample.term_indices.resize(sites.size());
  sample.weight = gamma_total(sites);
  for (std::size_t k = 0; k < sites.size(); ++k) {
    std::vector<double> w(sites[k].terms.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::abs(sites[k].terms[i].alpha);
    const int pick = rng.categorical(w);
    sample.term_indices[k] = pick;
    if (sites[k].terms[pick].alpha < 0.0) sample.sign = -sample.sign;
  }
  return sample;
}

std::vector<BranchSample> sample_branches(std::span<const PecDecomposition> sites, long count,
                                          Rng& rng) {
  if (count < 1) throw std::invalid_argument("sample_branches: count must be >= 1");
  std::vector<BranchSample> out;
  out.reserve(count);
  for (long i = 0; i < count; ++i) out.push_back(draw_branch(sites, rng));
  return out;
}

}  // namespace vpurify
