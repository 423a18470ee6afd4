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

#include "vpurify/channel.hpp"

#include <bit>
#include <cmath>

namespace vpurify {

namespace {

constexpr double kKrausTol = 1e-10;
constexpr double kProbTol = 1e-12;
constexpr double kChoiEigFloor = -1e-9;
constexpr double kPtmDiagonalTol = 1e-10;

// Pauli index (base-4 digits, msb-first) → per-subsystem X/Z bit masks.
void pauli_masks(int index, int n, long& xmask, long& zmask) {
  xmask = 0;
  zmask = 0;
  for (int q = n - 1; q >= 0; --q) {
    const int d = index & 3;
    index >>= 2;
    const long bit = 1L << (n - 1 - q);
    if (d == 1 || d == 2) xmask |= bit;
    if (d == 2 || d == 3) zmask |= bit;
  }
}

int pauli_index_from_masks(long xmask, long zmask, int n) {
  int index = 0;
  for (int q = 0; q < n; ++q) {
    const long bit = 1L << (n - 1 - q);
    const bool x = xmask & bit, z = zmask & bit;
    int d = 0;
    if (x && !z) d = 1;
    else if (x && z) d = 2;
    else if (!x && z) d = 3;
    index = (index << 2) | d;
  }
  return index;
}

// Map subsystem bit masks into the full register's bit positions.
long lift_mask(long sub_mask, const std::vector<int>& targets, int total_qubits) {
  long full = 0;
  const int k = static_cast<int>(targets.size());
  for (int i = 0; i < k; ++i)
    if ((sub_mask >> (k - 1 - i)) & 1) full |= 1L << (total_qubits - 1 - targets[i]);
  return full;
}

int parity(long v) { return std::popcount(static_cast<unsigned long>(v)) & 1; }

}  // namespace

std::string to_string(NoiseFamily f) {
  switch (f) {
    case NoiseFamily::depolarizing: return "depolarizing";
    case NoiseFamily::dephasing: return "dephasing";
    case NoiseFamily::amplitude_damping: return "amplitude-damping";
    case NoiseFamily::pauli_table: return "pauli";
  }
  return "?";
}

NoiseFamily noise_family_from_string(const std::string& s) {
  if (s == "depolarizing") return NoiseFamily::depolarizing;
  if (s == "dephasing") return NoiseFamily::dephasing;
  if (s == "amplitude-damping" || s == "amplitude_damping" || s == "ad")
    return NoiseFamily::amplitude_damping;
  if (s == "pauli") return NoiseFamily::pauli_table;
  throw std::invalid_argument("unknown noise family: " + s);
}

QuantumChannel QuantumChannel::identity(int n_qubits) {
  std::vector<double> probs(1 << (2 * n_qubits), 0.0);
  probs[0] = 1.0;
  return from_pauli_probs(std::move(probs), false);
}

QuantumChannel QuantumChannel::from_kraus(std::vector<ComplexMatrix> kraus, bool validate_now) {
  if (kraus.empty()) throw std::invalid_argument("from_kraus: no operators");
  const int d = static_cast<int>(kraus.front().rows());
  for (const auto& k : kraus)
    if (k.rows() != d || k.cols() != d) throw std::invalid_argument("from_kraus: shape mismatch");
  QuantumChannel ch;
  ch.n_qubits_ = log2_exact(d);
  ch.form_ = ChannelForm::kraus;
  ch.kraus_ = std::move(kraus);
  if (validate_now) ch.validate();
  return ch;
}

QuantumChannel QuantumChannel::from_pauli_probs(std::vector<double> probs, bool validate_now) {
  const auto size = probs.size();
  int n = 0;
  while ((1UL << (2 * n)) < size) ++n;
  if ((1UL << (2 * n)) != size)
    throw std::invalid_argument("from_pauli_probs: size must be 4^n");
  QuantumChannel ch;
  ch.n_qubits_ = n;
  ch.form_ = ChannelForm::pauli_mixture;
  ch.pauli_probs_ = std::move(probs);
  if (validate_now) ch.validate();
  return ch;
}

QuantumChannel QuantumChannel::from_superoperator(ComplexMatrix superop, bool validate_now) {
  const long d2 = superop.rows();
  if (superop.cols() != d2) throw std::invalid_argument("from_superoperator: not square");
  const long d = static_cast<long>(std::lround(std::sqrt(static_cast<double>(d2))));
  if (d * d != d2) throw std::invalid_argument("from_superoperator: dimension not a square");
  QuantumChannel ch;
  ch.n_qubits_ = log2_exact(static_cast<int>(d));
  ch.form_ = ChannelForm::superoperator;
  ch.superop_ = std::move(superop);
  if (validate_now) ch.validate();
  return ch;
}

QuantumChannel QuantumChannel::from_unitary(const ComplexMatrix& u) {
  if (!is_unitary(u)) throw std::invalid_argument("from_unitary: operator is not unitary");
  return from_kraus({u}, false);
}

const std::vector<ComplexMatrix>& QuantumChannel::kraus() const {
  if (form_ != ChannelForm::kraus) throw std::logic_error("channel is not in Kraus form");
  return kraus_;
}

const std::vector<double>& QuantumChannel::pauli_probs() const {
  if (form_ != ChannelForm::pauli_mixture)
    throw std::logic_error("channel is not in Pauli-mixture form");
  return pauli_probs_;
}

const ComplexMatrix& QuantumChannel::superoperator() const {
  if (form_ != ChannelForm::superoperator)
    throw std::logic_error("channel is not in superoperator form");
  return superop_;
}

void QuantumChannel::validate() const {
  switch (form_) {
    case ChannelForm::kraus: {
      ComplexMatrix sum = ComplexMatrix::Zero(dim(), dim());
      for (const auto& k : kraus_) sum += k.adjoint() * k;
      if (max_abs_diff(sum, identity_matrix(dim())) > kKrausTol)
        throw std::domain_error("Kraus completeness violated beyond 1e-10");
      break;
    }
    case ChannelForm::pauli_mixture: {
      double sum = 0.0;
      for (double p : pauli_probs_) {
        if (p < -kProbTol) throw std::domain_error("negative Pauli probability");
        sum += p;
      }
      if (std::abs(sum - 1.0) > kProbTol)
        throw std::domain_error("Pauli probabilities do not sum to 1 within 1e-12");
      break;
    }
    case ChannelForm::superoperator: {
      const ComplexMatrix j = choi_matrix();
      if (min_eigenvalue(j) < kChoiEigFloor)
        throw std::domain_error("Choi matrix not PSD (eigenvalue below -1e-9)");
      // Trace preservation: tr_out J = I.
      const int d = dim();
      ComplexMatrix tr_out = ComplexMatrix::Zero(d, d);
      for (int i = 0; i < d; ++i)
        for (int j2 = 0; j2 < d; ++j2) {
          Complex acc = 0.0;
          for (int a = 0; a < d; ++a) acc += j(i * d + a, j2 * d + a);
          tr_out(i, j2) = acc;
        }
      if (max_abs_diff(tr_out, identity_matrix(d)) > kKrausTol)
        throw std::domain_error("superoperator not trace preserving to 1e-10");
      break;
    }
  }
}

ComplexMatrix QuantumChannel::to_superoperator() const {
  if (form_ == ChannelForm::superoperator) return superop_;
  const int d = dim();
  ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& k : kraus_operators()) s += tensor_product(k.conjugate(), k);
  return s;
}

ComplexMatrix QuantumChannel::choi_matrix() const {
  const int d = dim();
  ComplexMatrix j(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      ComplexMatrix unit = ComplexMatrix::Zero(d, d);
      unit(i, k) = 1.0;
      const ComplexMatrix out = apply_full(unit);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) j(i * d + a, k * d + b) = out(a, b);
    }
  return j;
}

std::vector<ComplexMatrix> QuantumChannel::kraus_operators() const {
  const int d = dim();
  switch (form_) {
    case ChannelForm::kraus: return kraus_;
    case ChannelForm::pauli_mixture: {
      std::vector<ComplexMatrix> ops;
      for (std::size_t i = 0; i < pauli_probs_.size(); ++i) {
        if (pauli_probs_[i] <= 0.0) continue;
        ops.push_back(std::sqrt(pauli_probs_[i]) *
                      pauli_by_index(static_cast<int>(i), n_qubits_));
      }
      return ops;
    }
    case ChannelForm::superoperator: {
      const ComplexMatrix j = choi_matrix();
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(j);
      std::vector<ComplexMatrix> ops;
      for (int k = 0; k < es.eigenvalues().size(); ++k) {
        const double lam = es.eigenvalues()(k);
        if (lam < 1e-12) continue;
        ComplexMatrix op(d, d);
        for (int i = 0; i < d; ++i)
          for (int a = 0; a < d; ++a) op(a, i) = es.eigenvectors()(i * d + a, k);
        ops.push_back(std::sqrt(lam) * op);
      }
      return ops;
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<double> QuantumChannel::ptm_diagonal() const {
  const int count = 1 << (2 * n_qubits_);
  const int d = dim();
  std::vector<double> diag(count);
  for (int a = 0; a < count; ++a) {
    const ComplexMatrix p = pauli_by_index(a, n_qubits_);
    diag[a] = (p * apply_full(p)).trace().real() / d;
  }
  return diag;
}

QuantumChannel QuantumChannel::to_pauli_mixture() const {
  if (form_ == ChannelForm::pauli_mixture) return *this;
  const int count = 1 << (2 * n_qubits_);
  const int d = dim();
  // Reject silently mislabeling non-Pauli noise: the full PTM must be
  // diagonal to 1e-10.
  std::vector<ComplexMatrix> paulis(count);
  std::vector<ComplexMatrix> mapped(count);
  for (int a = 0; a < count; ++a) {
    paulis[a] = pauli_by_index(a, n_qubits_);
    mapped[a] = apply_full(paulis[a]);
  }
  std::vector<double> diag(count);
  for (int a = 0; a < count; ++a) {
    for (int b = 0; b < count; ++b) {
      const Complex r = (paulis[a] * mapped[b]).trace() / static_cast<double>(d);
      if (a == b) {
        if (std::abs(r.imag()) > kPtmDiagonalTol)
          throw std::domain_error("PTM diagonal has an imaginary part; not a Pauli channel");
        diag[a] = r.real();
      } else if (std::abs(r) > kPtmDiagonalTol) {
        throw std::domain_error("PTM is not diagonal to 1e-10; refusing Pauli conversion");
      }
    }
  }
  // p_i = (1/4^n) Σ_a s(i,a) λ_a with s the Pauli commutation sign.
  std::vector<double> probs(count, 0.0);
  for (int i = 0; i < count; ++i) {
    long xi, zi;
    pauli_masks(i, n_qubits_, xi, zi);
    double acc = 0.0;
    for (int a = 0; a < count; ++a) {
      long xa, za;
      pauli_masks(a, n_qubits_, xa, za);
      const int sign = parity((xi & za) ^ (zi & xa)) ? -1 : 1;
      acc += sign * diag[a];
    }
    double p = acc / count;
    if (p < 0.0 && p > -1e-11) p = 0.0;
    probs[i] = p;
  }
  return from_pauli_probs(std::move(probs));
}

ComplexMatrix QuantumChannel::apply_full(const ComplexMatrix& rho) const {
  if (rho.rows() != dim() || rho.cols() != dim())
    throw std::invalid_argument("apply_full: dimension mismatch");
  switch (form_) {
    case ChannelForm::pauli_mixture: {
      ComplexMatrix out = ComplexMatrix::Zero(dim(), dim());
      for (std::size_t i = 0; i < pauli_probs_.size(); ++i) {
        if (pauli_probs_[i] == 0.0) continue;
        long x, z;
        pauli_masks(static_cast<int>(i), n_qubits_, x, z);
        accumulate_pauli_conjugation(out, rho, x, z, pauli_probs_[i]);
      }
      return out;
    }
    case ChannelForm::kraus: {
      ComplexMatrix out = ComplexMatrix::Zero(dim(), dim());
      for (const auto& k : kraus_) out += k * rho * k.adjoint();
      return out;
    }
    case ChannelForm::superoperator:
      return unvec(superop_ * vec(rho), dim(), dim());
  }
  throw std::logic_error("unreachable");
}

void accumulate_pauli_conjugation(ComplexMatrix& out, const ComplexMatrix& rho, long xmask,
                                  long zmask, double weight) {
  const long d = rho.rows();
  // (PρP†)[r,c] = (−1)^{z·r} (−1)^{z·c} ρ[r⊕x, c⊕x]
  for (long c = 0; c < d; ++c) {
    const int sc = parity(zmask & c);
    for (long r = 0; r < d; ++r) {
      const int s = sc ^ parity(zmask & r);
      const Complex v = rho(r ^ xmask, c ^ xmask);
      out(r, c) += s ? -weight * v : weight * v;
    }
  }
}

ComplexMatrix apply_channel(const QuantumChannel& ch, const ComplexMatrix& state,
                            const std::vector<int>& targets, int total_qubits) {
  if (static_cast<int>(targets.size()) != ch.qubits())
    throw std::invalid_argument("apply_channel: target count does not match channel");
  const long d = 1L << total_qubits;
  if (state.rows() != d || state.cols() != d)
    throw std::invalid_argument("apply_channel: state layout mismatch");

  if (ch.form() == ChannelForm::pauli_mixture) {
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    const auto& probs = ch.pauli_probs();
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i] == 0.0) continue;
      long x, z;
      pauli_masks(static_cast<int>(i), ch.qubits(), x, z);
      accumulate_pauli_conjugation(out, state, lift_mask(x, targets, total_qubits),
                                   lift_mask(z, targets, total_qubits), probs[i]);
    }
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& k : ch.kraus_operators()) {
    const ComplexMatrix kf = embed_operator(k, targets, total_qubits);
    out += kf * state * kf.adjoint();
  }
  return out;
}

DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& rho,
                    const std::vector<int>& targets, int total_qubits) {
  return DensityMatrix(apply_channel(ch, rho.matrix(), targets, total_qubits));
}

QuantumChannel compose(const QuantumChannel& a, const QuantumChannel& b) {
  if (a.qubits() != b.qubits()) throw std::invalid_argument("compose: dimension mismatch");
  if (a.form() == ChannelForm::pauli_mixture && b.form() == ChannelForm::pauli_mixture) {
    // Pauli mixtures convolve over X/Z masks (conjugation phases cancel).
    const int n = a.qubits();
    const std::size_t count = a.pauli_probs().size();
    std::vector<double> probs(count, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
      const double pa = a.pauli_probs()[i];
      if (pa == 0.0) continue;
      long xa, za;
      pauli_masks(static_cast<int>(i), n, xa, za);
      for (std::size_t j = 0; j < count; ++j) {
        const double pb = b.pauli_probs()[j];
        if (pb == 0.0) continue;
        long xb, zb;
        pauli_masks(static_cast<int>(j), n, xb, zb);
        probs[pauli_index_from_masks(xa ^ xb, za ^ zb, n)] += pa * pb;
      }
    }
    return QuantumChannel::from_pauli_probs(std::move(probs), false);
  }
  return QuantumChannel::from_superoperator(a.to_superoperator() * b.to_superoperator(), false);
}

QuantumChannel pauli_twirl(const QuantumChannel& ch) {
  const int n = ch.qubits();
  const int count = 1 << (2 * n);
  const auto diag = ch.ptm_diagonal();
  std::vector<double> probs(count, 0.0);
  for (int i = 0; i < count; ++i) {
    long xi, zi;
    pauli_masks(i, n, xi, zi);
    double acc = 0.0;
    for (int a = 0; a < count; ++a) {
      long xa, za;
      pauli_masks(a, n, xa, za);
      acc += (parity((xi & za) ^ (zi & xa)) ? -1.0 : 1.0) * diag[a];
    }
    double p = acc / count;
    if (p < 0.0 && p > -1e-11) p = 0.0;
    probs[i] = p;
  }
  return QuantumChannel::from_pauli_probs(std::move(probs));
}

QuantumChannel purified_channel(const QuantumChannel& pauli_mixture, int m) {
  if (m < 1) throw std::invalid_argument("purified_channel: order m must be >= 1");
  const auto& p = pauli_mixture.pauli_probs();
  double norm = 0.0;
  for (double pi : p) norm += std::pow(pi, m);
  if (norm <= 0.0) throw std::domain_error("purified_channel: degenerate mixture");
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = std::pow(p[i], m) / norm;
  return QuantumChannel::from_pauli_probs(std::move(out), false);
}

ErrorOperatorDecomposition error_operator_decomposition(const QuantumChannel& ch) {
  ErrorOperatorDecomposition dec;
  if (ch.form() == ChannelForm::pauli_mixture) {
    const auto& probs = ch.pauli_probs();
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i] == 0.0) continue;
      dec.p.push_back(probs[i]);
      dec.e.push_back(1.0);  // Pauli: unitary, Hilbert-Schmidt normalized
      dec.ops.push_back(pauli_by_index(static_cast<int>(i), ch.qubits()));
    }
    return dec;
  }
  const int d = ch.dim();
  for (const auto& k : ch.kraus_operators()) {
    Eigen::JacobiSVD<ComplexMatrix> svd(k);
    const double s = svd.singularValues()(0);
    if (s < 1e-14) continue;
    const ComplexMatrix e_op = k / s;
    dec.p.push_back(s * s);
    dec.e.push_back((e_op * e_op.adjoint()).trace().real() / d);
    dec.ops.push_back(e_op);
  }
  return dec;
}

GeneralizedPurified generalized_purified_channel(const QuantumChannel& ch, int m) {
  if (m < 1) throw std::invalid_argument("generalized_purified_channel: m must be >= 1");
  const auto dec = error_operator_decomposition(ch);
  const int d = ch.dim();

  double max_cross = 0.0;
  for (std::size_t i = 0; i < dec.ops.size(); ++i)
    for (std::size_t j = i + 1; j < dec.ops.size(); ++j)
      max_cross = std::max(max_cross,
                           std::abs((dec.ops[i] * dec.ops[j].adjoint()).trace()) / d);
  if (max_cross > 1e-10) {
    TheoremOneReport report;
    report.e_values = dec.e;
    report.orthogonal = false;
    report.orthogonality_deviation = max_cross;
    throw TheoremConditionError("error operators are not pairwise orthogonal", report);
  }

  double p_hat = 0.0;
  std::vector<double> weights(dec.p.size());
  for (std::size_t i = 0; i < dec.p.size(); ++i) {
    weights[i] = std::pow(dec.p[i], m) * std::pow(dec.e[i], m - 1);
    p_hat += weights[i];
  }
  if (p_hat <= 0.0) throw std::domain_error("generalized purification normalization vanished");

  std::vector<ComplexMatrix> kraus;
  for (std::size_t i = 0; i < dec.p.size(); ++i)
    kraus.push_back(std::sqrt(weights[i] / p_hat) * dec.ops[i]);
  return {QuantumChannel::from_kraus(std::move(kraus), false), p_hat};
}

TheoremOneReport check_theorem1(const QuantumChannel& e_channel,
                                const QuantumChannel& f_channel) {
  if (f_channel.qubits() != 1)
    throw std::invalid_argument("check_theorem1: F must be single-qubit");
  TheoremOneReport report;

  const auto dec = error_operator_decomposition(e_channel);
  report.e_values = dec.e;
  const int d = e_channel.dim();
  double max_cross = 0.0;
  for (std::size_t i = 0; i < dec.ops.size(); ++i)
    for (std::size_t j = i + 1; j < dec.ops.size(); ++j)
      max_cross = std::max(max_cross,
                           std::abs((dec.ops[i] * dec.ops[j].adjoint()).trace()) / d);
  report.orthogonality_deviation = max_cross;
  report.orthogonal = max_cross < 1e-10;

  ComplexMatrix unit01 = ComplexMatrix::Zero(2, 2);
  unit01(0, 1) = 1.0;
  const ComplexMatrix f01_img = f_channel.apply_full(unit01);
  report.f01 = f01_img(0, 1);
  double leak = std::max(std::abs(f01_img(1, 0)),
                         std::max(std::abs(f01_img(0, 0)), std::abs(f01_img(1, 1))));
  for (int i = 0; i < 2; ++i) {
    ComplexMatrix unit = ComplexMatrix::Zero(2, 2);
    unit(i, i) = 1.0;
    const ComplexMatrix img = f_channel.apply_full(unit);
    leak = std::max(leak, std::max(std::abs(img(0, 1)), std::abs(img(1, 0))));
  }
  report.f_structure_deviation = leak;
  report.f_diag_ok = leak < 1e-10;
  return report;
}

QuantumChannel make_channel(NoiseFamily family, double p, int n_qubits,
                            const std::vector<double>* pauli_probs_1q) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("noise rate must lie in [0, 1]");
  if (n_qubits < 1) throw std::invalid_argument("make_channel: need at least one qubit");
  switch (family) {
    case NoiseFamily::depolarizing: {
      const int count = 1 << (2 * n_qubits);
      std::vector<double> probs(count, p / count);
      probs[0] = 1.0 - p + p / count;
      return QuantumChannel::from_pauli_probs(std::move(probs), false);
    }
    case NoiseFamily::dephasing: {
      std::vector<double> one{1.0 - p, 0.0, 0.0, p};
      QuantumChannel ch = QuantumChannel::from_pauli_probs(one, false);
      QuantumChannel out = ch;
      for (int q = 1; q < n_qubits; ++q) {
        // Tensor product of Pauli mixtures = product distribution.
        const auto& a = out.pauli_probs();
        std::vector<double> probs(a.size() * 4, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i)
          for (int j = 0; j < 4; ++j) probs[i * 4 + j] = a[i] * one[j];
        out = QuantumChannel::from_pauli_probs(std::move(probs), false);
      }
      return out;
    }
    case NoiseFamily::amplitude_damping: {
      ComplexMatrix k0 = ComplexMatrix::Zero(2, 2), k1 = ComplexMatrix::Zero(2, 2);
      k0(0, 0) = 1.0;
      k0(1, 1) = std::sqrt(1.0 - p);
      k1(0, 1) = std::sqrt(p);
      std::vector<ComplexMatrix> ops{k0, k1};
      for (int q = 1; q < n_qubits; ++q) {
        std::vector<ComplexMatrix> next;
        for (const auto& a : ops) {
          next.push_back(tensor_product(a, k0));
          next.push_back(tensor_product(a, k1));
        }
        ops = std::move(next);
      }
      return QuantumChannel::from_kraus(std::move(ops), false);
    }
    case NoiseFamily::pauli_table: {
      if (pauli_probs_1q == nullptr || pauli_probs_1q->size() != 4)
        throw std::invalid_argument("pauli_table family needs 4 single-qubit probabilities");
      std::vector<double> probs = *pauli_probs_1q;
      QuantumChannel out = QuantumChannel::from_pauli_probs(probs);
      for (int q = 1; q < n_qubits; ++q) {
        const auto& a = out.pauli_probs();
        std::vector<double> next(a.size() * 4, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i)
          for (int j = 0; j < 4; ++j) next[i * 4 + j] = a[i] * probs[j];
        out = QuantumChannel::from_pauli_probs(std::move(next), false);
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

QuantumChannel make_correlated_cswap_noise(NoiseFamily family, double p0, double p1) {
  if (family != NoiseFamily::depolarizing && family != NoiseFamily::dephasing)
    throw std::invalid_argument("correlated cSWAP noise supports depolarizing and dephasing only");
  if (p0 < 0 || p0 > 1 || p1 < 0 || p1 > 1)
    throw std::invalid_argument("noise rate must lie in [0, 1]");

  QuantumChannel global = [&] {
    if (family == NoiseFamily::depolarizing) return make_channel(family, p1, 3);
    std::vector<double> probs(64, 0.0);
    probs[0] = 1.0 - p1;
    probs[0x3F] = p1;  // index of Z⊗Z⊗Z (digits 3,3,3)
    return QuantumChannel::from_pauli_probs(std::move(probs), false);
  }();

  // §-order: locals compose after the global factor. All factors are Pauli
  // channels, so the order is immaterial numerically.
  QuantumChannel out = global;
  for (int q = 0; q < 3; ++q) {
    const QuantumChannel local1 = make_channel(family, p0, 1);
    std::vector<double> lifted(64, 0.0);
    for (int i = 0; i < 4; ++i) {
      if (local1.pauli_probs()[i] == 0.0) continue;
      int index = 0;
      for (int slot = 0; slot < 3; ++slot) index = (index << 2) | (slot == q ? i : 0);
      lifted[index] = local1.pauli_probs()[i];
    }
    out = compose(QuantumChannel::from_pauli_probs(std::move(lifted), false), out);
  }
  return out;
}

QuantumChannel NoiseSpec::channel(int n_qubits) const {
  if (family == NoiseFamily::pauli_table)
    return make_channel(family, 0.0, n_qubits, &pauli_probs);
  return make_channel(family, rate, n_qubits);
}

void NoiseModel::validate() const {
  auto check = [](double r, const char* what) {
    if (r < 0.0 || r > 1.0) throw std::domain_error(std::string(what) + " rate out of [0, 1]");
  };
  check(single_qubit.rate, "single-qubit");
  check(two_qubit.rate, "two-qubit");
  check(cswap.local_rate, "cswap local");
  if (cswap.global_rate) check(*cswap.global_rate, "cswap global");
}

}  // namespace vpurify
