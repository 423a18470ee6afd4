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

#include <functional>
#include <span>

#include "vpurify/channel.hpp"
#include "vpurify/rng.hpp"

namespace vpurify {

/// Quasi-probability correction operations. reset_zero is applied as an
/// ideal zero-state preparation; noise on the reset itself is out of scope.
enum class PecOperation { identity, x, y, z, reset_zero };

QuantumChannel pec_operation_channel(PecOperation op);
std::string to_string(PecOperation op);

struct PecTerm {
  double alpha = 0.0;
  PecOperation op = PecOperation::identity;
};

/// Optimal single-qubit decomposition Σ α_i (E ∘ G_i) = I for one noise
/// site: coefficients sum to 1, γ = Σ|α_i| ≥ 1.
struct PecDecomposition {
  NoiseFamily family = NoiseFamily::depolarizing;
  double rate = 0.0;
  std::vector<PecTerm> terms;
  double gamma = 1.0;
};

/// Closed-form coefficients per family. Dephasing requires p < 1/2 (γ
/// diverges); throws within 1e-9 of that point.
PecDecomposition decomposition_for(NoiseFamily family, double p);

/// Max-abs entry deviation of the superoperator Σ α_i (noise ∘ G_i) from the
/// identity. A mismatched rate yields a nonzero deviation, reported rather
/// than raised.
double validate_inverse(const PecDecomposition& dec, const QuantumChannel& noise);

struct BranchSample {
  std::vector<int> term_indices;  // one per site
  int sign = 1;                   // Π sign(α)
  double weight = 1.0;            // γ_total
};

inline constexpr long kBranchEnumerationCap = 4096;  // 4^6

long branch_count(std::span<const PecDecomposition> sites);
double gamma_total(std::span<const PecDecomposition> sites);

/// Visit every branch of the product lattice with its coefficient
/// Π α_{k, i_k}. Throws when the lattice exceeds the enumeration cap.
void for_each_branch(std::span<const PecDecomposition> sites,
                     const std::function<void(std::span<const int>, double)>& visit);

struct MitigatedValue {
  double value = 0.0;
  double gamma_total = 1.0;
};

/// Exact branch sum Σ_i⃗ α_i⃗ · evaluator(i⃗).
MitigatedValue exact_mitigated_expectation(
    std::span<const PecDecomposition> sites,
    const std::function<double(std::span<const int>)>& evaluator);

/// One branch drawn with per-site probabilities |α_i|/γ_k.
BranchSample draw_branch(std::span<const PecDecomposition> sites, Rng& rng);
std::vector<BranchSample> sample_branches(std::span<const PecDecomposition> sites, long count,
                                          Rng& rng);

}  // namespace vpurify
