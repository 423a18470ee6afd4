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

#include "vpurify/purification.hpp"

#include <cmath>

namespace vpurify {

std::string to_string(PurificationMethod m) {
  switch (m) {
    case PurificationMethod::none: return "none";
    case PurificationMethod::vsp: return "vsp";
    case PurificationMethod::vcp: return "vcp";
    case PurificationMethod::pvsp: return "pvsp";
    case PurificationMethod::pvcp: return "pvcp";
  }
  return "?";
}

PurificationMethod purification_method_from_string(const std::string& s) {
  if (s == "none" || s == "noisy") return PurificationMethod::none;
  if (s == "vsp") return PurificationMethod::vsp;
  if (s == "vcp") return PurificationMethod::vcp;
  if (s == "pvsp") return PurificationMethod::pvsp;
  if (s == "pvcp") return PurificationMethod::pvcp;
  throw std::invalid_argument("unknown purification method: " + s);
}

void PurificationConfig::validate() const {
  if (method == PurificationMethod::none) return;
  if (order < 2) throw std::invalid_argument("purification order m must be >= 2");
  if (layers < 1) throw std::invalid_argument("layer count must be >= 1");
  const bool state_purification =
      method == PurificationMethod::vsp || method == PurificationMethod::pvsp;
  if (state_purification && layers != 1)
    throw std::invalid_argument("VSP/PVSP are single-layer schemes");
  const bool pec_method =
      method == PurificationMethod::pvsp || method == PurificationMethod::pvcp;
  if (pec_method && pec_mode == PecMode::off)
    throw std::invalid_argument("PVSP/PVCP require a PEC mode");
}

NoisyGate make_gate(ComplexMatrix unitary, QuantumChannel noise) {
  NoisyGate g;
  g.unitary = std::move(unitary);
  g.noise = std::move(noise);
  g.noise_targets.resize(g.noise.qubits());
  for (int i = 0; i < g.noise.qubits(); ++i) g.noise_targets[i] = i;
  return g;
}

DensityMatrix build_noisy_target(const GateSequence& gates, const DensityMatrix& probe) {
  ComplexMatrix state = probe.matrix();
  const int n = probe.qubits();
  for (const auto& g : gates) {
    state = g.unitary * state * g.unitary.adjoint();
    state = apply_channel(g.noise, state, g.noise_targets, n);
  }
  return DensityMatrix(std::move(state));
}

std::vector<GateSequence> split_into_blocks(const GateSequence& gates, int layers) {
  if (layers < 1) throw std::invalid_argument("split_into_blocks: layers must be >= 1");
  std::vector<GateSequence> blocks(layers);
  const std::size_t base = gates.size() / layers;
  std::size_t remainder = gates.size() % layers;
  std::size_t pos = 0;
  for (int l = 0; l < layers; ++l) {
    std::size_t take = base + (remainder > 0 ? 1 : 0);
    if (remainder > 0) --remainder;
    for (std::size_t i = 0; i < take; ++i) blocks[l].push_back(gates[pos++]);
  }
  return blocks;
}

AncillaRefreshResult ancilla_refresh(AncillaRefreshMode mode, int n_qubits, Rng* rng) {
  const int count = 1 << (2 * n_qubits);
  if (mode == AncillaRefreshMode::exact_mixed) {
    std::vector<double> probs(count, 1.0 / count);
    return {QuantumChannel::from_pauli_probs(std::move(probs), false), std::nullopt};
  }
  if (rng == nullptr)
    throw std::invalid_argument("sampled-pauli refresh needs a random stream");
  const int pick = static_cast<int>(rng->below(count));
  return {QuantumChannel::from_unitary(pauli_by_index(pick, n_qubits)), pick};
}

namespace {

struct CompiledOp {
  enum class Kind { unitary, channel } kind;
  ComplexMatrix local;             // unitary: register-local matrix
  QuantumChannel ch;               // channel payload
  std::vector<int> qubits;         // global qubit indices
};

struct Compiled {
  std::vector<std::vector<CompiledOp>> layer_ops;
  std::vector<std::vector<int>> pec_qubits;                  // per layer
  std::vector<std::vector<PecDecomposition>> pec_sites;      // per layer (zero-α terms pruned)
  double gamma = 1.0;
  long branches = 1;
};

CompiledOp unitary_op(ComplexMatrix local, std::vector<int> qubits) {
  CompiledOp op;
  op.kind = CompiledOp::Kind::unitary;
  op.local = std::move(local);
  op.qubits = std::move(qubits);
  return op;
}

CompiledOp channel_op(QuantumChannel ch, std::vector<int> qubits) {
  CompiledOp op;
  op.kind = CompiledOp::Kind::channel;
  op.ch = std::move(ch);
  op.qubits = std::move(qubits);
  return op;
}

// Global qubit index of register-local qubit j in register r (control is 0).
int reg_qubit(int r, int j, int n) { return 1 + r * n + j; }

class CircuitWalker {
 public:
  CircuitWalker(const PurificationCircuit& c, const LeafVisitor& visit)
      : c_(c), visit_(visit), n_(c.register_qubits), m_(c.order), total_(c.total_qubits()) {
    validate();
    compile();
  }

  void run(const DensityMatrix& input) {
    ComplexMatrix state = assemble_input(input);
    branch_.clear();
    walk(state, 0, 1.0);
  }

 private:
  void validate() const {
    if (m_ < 2) throw std::invalid_argument("purification needs order m >= 2");
    if (total_ > 5)
      throw std::invalid_argument("register layout exceeds the 5-qubit simulator cap");
    const bool nondefault_mask = !c_.mask.region1 || !c_.mask.region2 || !c_.mask.region3 ||
                                 !c_.mask.region4 || c_.mask.override1 || c_.mask.override2 ||
                                 c_.mask.override3 || c_.mask.override4;
    if (c_.cswap.correlated() && nondefault_mask)
      throw std::invalid_argument("correlated cSWAP noise cannot be split by region masks");
    if (c_.cswap.correlated() && m_ > 2)
      throw std::invalid_argument("correlated cSWAP noise is modeled per 3-qubit cSWAP (m = 2)");
    if (!c_.pec_sites.empty() &&
        c_.pec_sites.size() != static_cast<std::size_t>(layer_count() * n_))
      throw std::invalid_argument("PEC site count must be layers x register qubits");
    if (c_.refresh == AncillaRefreshMode::sampled_pauli && c_.rng == nullptr && layer_count() > 1)
      throw std::invalid_argument("sampled-pauli refresh needs a random stream");
  }

  int layer_count() const { return c_.vsp ? 1 : c_.layers; }

  ComplexMatrix assemble_input(const DensityMatrix& input) const {
    if (input.qubits() != n_)
      throw std::invalid_argument("input register size does not match the circuit");
    std::vector<ComplexMatrix> factors;
    factors.push_back(pure_state(plus_ket()).matrix());
    const ComplexMatrix mixed = maximally_mixed(n_).matrix();
    for (int r = 0; r < m_ - 1; ++r) factors.push_back(c_.vsp ? input.matrix() : mixed);
    factors.push_back(input.matrix());
    ComplexMatrix state = tensor_all(factors);
    if (c_.mask.override1)
      state = apply_channel(*c_.mask.override1, state, {0}, total_);  // injection site: start
    else if (c_.control_prep_noise && c_.mask.region1)
      state = apply_channel(*c_.control_prep_noise, state, {0}, total_);
    return state;
  }

  QuantumChannel local_cswap_channel() const {
    return make_channel(c_.cswap.family, c_.cswap.local_rate, 1);
  }

  // Noise attached to one cSWAP gate (control, anc qubit, tar qubit).
  // `second` selects the region assignment of the ancilla/target parts.
  void append_cswap_noise(std::vector<CompiledOp>& ops, int ctrl, int anc, int tar,
                          bool second) const {
    if (c_.cswap.correlated()) {
      ops.push_back(channel_op(
          make_correlated_cswap_noise(c_.cswap.family, c_.cswap.local_rate,
                                      *c_.cswap.global_rate),
          {ctrl, anc, tar}));
      return;
    }
    const bool has_local = c_.cswap.local_rate > 0.0;
    const QuantumChannel local = local_cswap_channel();
    if (!c_.mask.override1 && c_.mask.region1 && has_local)
      ops.push_back(channel_op(local, {ctrl}));
    if (!second) {
      if (c_.mask.override2)
        ops.push_back(channel_op(*c_.mask.override2, {anc}));
      else if (c_.mask.region2 && has_local)
        ops.push_back(channel_op(local, {anc}));
      if (c_.mask.override2)
        ops.push_back(channel_op(*c_.mask.override2, {tar}));
      else if (c_.mask.region2 && has_local)
        ops.push_back(channel_op(local, {tar}));
    } else {
      if (c_.mask.override3)
        ops.push_back(channel_op(*c_.mask.override3, {anc}));
      else if (c_.mask.region3 && has_local)
        ops.push_back(channel_op(local, {anc}));
      if (c_.mask.override4)
        ops.push_back(channel_op(*c_.mask.override4, {tar}));
      else if (c_.mask.region4 && has_local)
        ops.push_back(channel_op(local, {tar}));
    }
  }

  void append_permutation_layer(std::vector<CompiledOp>& ops, bool second) const {
    if (m_ == 2) {
      // Per-qubit-pair cSWAPs, each an atomic 3-qubit gate with its noise.
      for (int j = 0; j < n_; ++j) {
        const int anc = reg_qubit(0, j, n_);
        const int tar = reg_qubit(1, j, n_);
        ops.push_back(unitary_op(cswap_gate(), {0, anc, tar}));
        append_cswap_noise(ops, 0, anc, tar, second);
      }
    } else {
      // Atomic controlled register cycle; inverse direction on the closing
      // layer. Local noise lands on every involved qubit.
      std::vector<int> all(total_);
      for (int q = 0; q < total_; ++q) all[q] = q;
      ops.push_back(unitary_op(controlled_register_cycle(m_, n_, second), all));
      if (c_.cswap.local_rate > 0.0 || c_.mask.override2 || c_.mask.override3 ||
          c_.mask.override4) {
        const QuantumChannel local = local_cswap_channel();
        const bool has_local = c_.cswap.local_rate > 0.0;
        if (!c_.mask.override1 && c_.mask.region1 && has_local)
          ops.push_back(channel_op(local, {0}));
        for (int r = 0; r < m_; ++r)
          for (int j = 0; j < n_; ++j) {
            const bool target_reg = r == m_ - 1;
            const int q = reg_qubit(r, j, n_);
            if (!second) {
              if (c_.mask.override2) ops.push_back(channel_op(*c_.mask.override2, {q}));
              else if (c_.mask.region2 && has_local) ops.push_back(channel_op(local, {q}));
            } else if (target_reg) {
              if (c_.mask.override4) ops.push_back(channel_op(*c_.mask.override4, {q}));
              else if (c_.mask.region4 && has_local) ops.push_back(channel_op(local, {q}));
            } else {
              if (c_.mask.override3) ops.push_back(channel_op(*c_.mask.override3, {q}));
              else if (c_.mask.region3 && has_local) ops.push_back(channel_op(local, {q}));
            }
          }
      }
    }
    if (c_.mask.override1)
      ops.push_back(channel_op(*c_.mask.override1, {0}));  // injection site: after the layer
  }

  void compile() {
    const int layers = layer_count();
    compiled_.layer_ops.resize(layers);
    compiled_.pec_qubits.resize(layers);
    compiled_.pec_sites.resize(layers);

    for (int l = 0; l < layers; ++l) {
      auto& ops = compiled_.layer_ops[l];
      if (l > 0) {
        const auto refresh = ancilla_refresh(c_.refresh, n_, c_.rng);
        for (int r = 0; r < m_ - 1; ++r) {
          std::vector<int> qs(n_);
          for (int j = 0; j < n_; ++j) qs[j] = reg_qubit(r, j, n_);
          ops.push_back(channel_op(refresh.channel, qs));
        }
      }
      if (c_.vsp) {
        append_permutation_layer(ops, /*second=*/true);
      } else {
        append_permutation_layer(ops, /*second=*/false);
        for (const auto& gate : c_.blocks.at(l)) {
          for (int r = 0; r < m_; ++r) {
            std::vector<int> reg_all(n_);
            for (int j = 0; j < n_; ++j) reg_all[j] = reg_qubit(r, j, n_);
            ops.push_back(unitary_op(gate.unitary, reg_all));
            std::vector<int> noise_qs;
            for (int t : gate.noise_targets) noise_qs.push_back(reg_qubit(r, t, n_));
            ops.push_back(channel_op(gate.noise, noise_qs));
          }
        }
        append_permutation_layer(ops, /*second=*/true);
      }
      if (!c_.pec_sites.empty()) {
        for (int j = 0; j < n_; ++j) {
          PecDecomposition site = c_.pec_sites[l * n_ + j];
          std::erase_if(site.terms, [](const PecTerm& t) { return t.alpha == 0.0; });
          compiled_.pec_sites[l].push_back(std::move(site));
          compiled_.pec_qubits[l].push_back(reg_qubit(m_ - 1, j, n_));
        }
      }
    }
    compiled_.gamma = 1.0;
    compiled_.branches = 1;
    for (const auto& layer : compiled_.pec_sites)
      for (const auto& site : layer) {
        compiled_.gamma *= site.gamma;
        compiled_.branches *= static_cast<long>(site.terms.size());
        if (compiled_.branches > kBranchEnumerationCap)
          throw std::length_error("PEC branch lattice exceeds the enumeration cap of 4096");
      }
  }

  void apply_ops(ComplexMatrix& state, const std::vector<CompiledOp>& ops) const {
    for (const auto& op : ops) {
      if (op.kind == CompiledOp::Kind::unitary) {
        if (static_cast<long>(op.local.rows()) == state.rows()) {
          state = op.local * state * op.local.adjoint();
        } else {
          const ComplexMatrix full = embed_operator(op.local, op.qubits, total_);
          state = full * state * full.adjoint();
        }
      } else {
        state = apply_channel(op.ch, state, op.qubits, total_);
      }
    }
  }

  void walk(const ComplexMatrix& state, int layer, double alpha) {
    if (layer == layer_count()) {
      visit_(branch_, alpha, state);
      return;
    }
    ComplexMatrix evolved = state;
    apply_ops(evolved, compiled_.layer_ops[layer]);

    const auto& sites = compiled_.pec_sites[layer];
    if (sites.empty()) {
      walk(evolved, layer + 1, alpha);
      return;
    }
    std::vector<int> combo(sites.size(), 0);
    enumerate_sites(evolved, layer, 0, combo, alpha);
  }

  void enumerate_sites(const ComplexMatrix& state, int layer, std::size_t k,
                       std::vector<int>& combo, double alpha) {
    const auto& sites = compiled_.pec_sites[layer];
    if (k == sites.size()) {
      for (std::size_t i = 0; i < sites.size(); ++i) branch_.push_back(combo[i]);
      walk(state, layer + 1, alpha);
      branch_.resize(branch_.size() - sites.size());
      return;
    }
    const int qubit = compiled_.pec_qubits[layer][k];
    for (std::size_t i = 0; i < sites[k].terms.size(); ++i) {
      const auto& term = sites[k].terms[i];
      combo[k] = static_cast<int>(i);
      ComplexMatrix corrected =
          apply_channel(pec_operation_channel(term.op), state, {qubit}, total_);
      enumerate_sites(corrected, layer, k + 1, combo, alpha * term.alpha);
    }
  }

  const PurificationCircuit& c_;
  const LeafVisitor& visit_;
  int n_, m_, total_;
  Compiled compiled_;
  std::vector<int> branch_;
};

std::vector<double> joint_distribution(const ComplexMatrix& state, int n, int total_qubits) {
  // Control X outcome (+1 block first) x computational target outcome.
  const ComplexMatrix h_full = embed_operator(hadamard(), {0}, total_qubits);
  const ComplexMatrix rotated = h_full * state * h_full.adjoint();
  const long dim = rotated.rows();
  const long tar_mask = (1L << n) - 1;
  std::vector<double> joint(2L << n, 0.0);
  for (long d = 0; d < dim; ++d) {
    const int s_block = static_cast<int>((d >> (total_qubits - 1)) & 1);
    const long x = d & tar_mask;
    joint[s_block * (1L << n) + x] += rotated(d, d).real();
  }
  for (double& v : joint)
    if (v < 0.0 && v > -1e-9) v = 0.0;
  return joint;
}

}  // namespace

void run_purification_circuit(const PurificationCircuit& circuit, const DensityMatrix& input,
                              const LeafVisitor& visit) {
  CircuitWalker walker(circuit, visit);
  walker.run(input);
}

PurificationOutcome purification_outcome(const PurificationCircuit& circuit,
                                         const DensityMatrix& input) {
  PurificationOutcome out;
  const int n = circuit.register_qubits;
  const long outcomes = 1L << n;
  out.numerators.assign(outcomes, 0.0);
  double gamma = 1.0;
  for (const auto& site : circuit.pec_sites) gamma *= site.gamma;
  out.gamma = gamma;

  const int layers = circuit.vsp ? 1 : circuit.layers;
  const std::size_t prefix_sites =
      circuit.pec_sites.empty() ? 0 : static_cast<std::size_t>((layers - 1) * n);
  out.gamma_prefix = 1.0;
  for (std::size_t k = 0; k < prefix_sites; ++k) out.gamma_prefix *= circuit.pec_sites[k].gamma;

  // Branch indices skip zero-coefficient terms, so map indices back to the
  // sign of the surviving terms per site.
  std::vector<std::vector<int>> term_signs;
  for (const auto& site : circuit.pec_sites) {
    std::vector<int> signs;
    for (const auto& term : site.terms)
      if (term.alpha != 0.0) signs.push_back(term.alpha < 0.0 ? -1 : 1);
    term_signs.push_back(std::move(signs));
  }

  run_purification_circuit(circuit, input, [&](std::span<const int> branch, double alpha,
                                               const ComplexMatrix& state) {
    auto joint = joint_distribution(state, n, circuit.total_qubits());
    double den = 0.0;
    for (long x = 0; x < outcomes; ++x) {
      const double d = joint[x] - joint[outcomes + x];
      out.numerators[x] += alpha * d;
      den += d;
    }
    out.denominator += alpha * den;
    out.branch_probs.push_back(std::abs(alpha) / gamma);
    out.branch_signs.push_back(alpha < 0.0 ? -1 : 1);
    int prefix_sign = 1;
    for (std::size_t k = 0; k < prefix_sites; ++k)
      prefix_sign *= term_signs[k][branch[k]];
    out.branch_prefix_signs.push_back(prefix_sign);
    out.branch_joint.push_back(std::move(joint));
  });
  return out;
}

RatioExpectation ratio_expectation(const PurificationCircuit& circuit, const DensityMatrix& input,
                                   const ComplexMatrix& obs) {
  const int n = circuit.register_qubits;
  const int total = circuit.total_qubits();
  if (obs.rows() != (1 << n) || !is_hermitian(obs))
    throw std::invalid_argument("observable must be Hermitian on the target register");

  std::vector<int> tar(n);
  for (int j = 0; j < n; ++j) tar[j] = 1 + (circuit.order - 1) * n + j;
  const ComplexMatrix x_full = embed_operator(pauli('X'), {0}, total);
  const ComplexMatrix xo_full = x_full * embed_operator(obs, tar, total);

  RatioExpectation r;
  double gamma = 1.0;
  for (const auto& site : circuit.pec_sites) gamma *= site.gamma;
  r.gamma = gamma;
  run_purification_circuit(circuit, input,
                           [&](std::span<const int>, double alpha, const ComplexMatrix& state) {
                             r.numerator += alpha * (xo_full * state).trace().real();
                             r.denominator += alpha * (x_full * state).trace().real();
                           });
  if (std::abs(r.denominator) < kDenominatorFloor)
    throw std::domain_error("purification denominator below 1e-12 (eta ~ 0 breakdown)");
  r.ratio = r.numerator / r.denominator;
  return r;
}

RatioExpectation simulate_vsp(const DensityMatrix& noisy_state, const ComplexMatrix& obs, int m,
                              const std::optional<QuantumChannel>& control_noise,
                              const CswapNoiseSpec& cswap,
                              const std::vector<PecDecomposition>& pec_sites) {
  PurificationCircuit circuit;
  circuit.vsp = true;
  circuit.order = m;
  circuit.register_qubits = noisy_state.qubits();
  circuit.layers = 1;
  circuit.cswap = cswap;
  circuit.mask.override1 = control_noise;
  circuit.pec_sites = pec_sites;
  return ratio_expectation(circuit, noisy_state, obs);
}

RatioExpectation simulate_vcp(const GateSequence& gates, const DensityMatrix& probe,
                              const ComplexMatrix& obs, const PurificationConfig& config,
                              const NoiseLocationMask& mask, const CswapNoiseSpec& cswap,
                              const NoiseSpec* pec_target, Rng* rng) {
  config.validate();
  if (config.method != PurificationMethod::vcp && config.method != PurificationMethod::pvcp)
    throw std::invalid_argument("simulate_vcp handles the vcp/pvcp methods");
  PurificationCircuit circuit;
  circuit.order = config.order;
  circuit.layers = config.layers;
  circuit.register_qubits = probe.qubits();
  circuit.blocks = split_into_blocks(gates, config.layers);
  circuit.cswap = cswap;
  circuit.mask = mask;
  circuit.refresh = config.ancilla_refresh;
  circuit.rng = rng;
  if (config.method == PurificationMethod::pvcp && config.pec_mode != PecMode::off)
    circuit.pec_sites = pec_sites_for(cswap, circuit.register_qubits, config.layers, pec_target);
  return ratio_expectation(circuit, probe, obs);
}

std::vector<PecDecomposition> pec_sites_for(const CswapNoiseSpec& cswap, int register_qubits,
                                            int layers, const NoiseSpec* assumed) {
  const NoiseFamily family = assumed ? assumed->family : cswap.family;
  const double rate = assumed ? assumed->rate : cswap.local_rate;
  const PecDecomposition site = decomposition_for(family, rate);
  std::vector<PecDecomposition> sites;
  for (int l = 0; l < layers; ++l)
    for (int j = 0; j < register_qubits; ++j) sites.push_back(site);
  return sites;
}

}  // namespace vpurify
