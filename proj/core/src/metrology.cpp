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

#include "vpurify/metrology.hpp"

#include <algorithm>
#include <cmath>

namespace vpurify {

namespace {
double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }
constexpr double kLogFloor = 1e-12;
}  // namespace

std::string to_string(TaskKind k) {
  switch (k) {
    case TaskKind::zeeman_sequential: return "zeeman-sequential";
    case TaskKind::zeeman_parallel: return "zeeman-parallel";
    case TaskKind::multiparam_sequential: return "multiparam-sequential";
    case TaskKind::multiparam_feedback: return "multiparam-feedback";
  }
  return "?";
}

TaskKind task_kind_from_string(const std::string& s) {
  if (s == "zeeman-sequential") return TaskKind::zeeman_sequential;
  if (s == "zeeman-parallel") return TaskKind::zeeman_parallel;
  if (s == "multiparam-sequential") return TaskKind::multiparam_sequential;
  if (s == "multiparam-feedback") return TaskKind::multiparam_feedback;
  throw std::invalid_argument("unknown task kind: " + s);
}

std::string to_string(MeasurementBasis b) {
  switch (b) {
    case MeasurementBasis::ghz_y: return "GHZ-y";
    case MeasurementBasis::bell: return "Bell";
    case MeasurementBasis::rotated_bell: return "rotated-Bell";
  }
  return "?";
}

MeasurementBasis measurement_basis_from_string(const std::string& s) {
  if (s == "GHZ-y" || s == "ghz-y") return MeasurementBasis::ghz_y;
  if (s == "Bell" || s == "bell") return MeasurementBasis::bell;
  if (s == "rotated-Bell" || s == "rotated-bell") return MeasurementBasis::rotated_bell;
  throw std::invalid_argument("unknown measurement basis: " + s);
}

void TaskSpec::validate() const {
  if (encoding_count < 1) throw std::invalid_argument("task: N must be >= 1");
  if (evolution_time <= 0.0) throw std::invalid_argument("task: t must be positive");
  if (multiparam() && true_params.size() != 3)
    throw std::invalid_argument("multiparameter tasks carry exactly 3 parameters");
  if (zeeman() && true_params.size() != 1)
    throw std::invalid_argument("Zeeman tasks carry exactly 1 parameter");
  if (zeeman() && measurement != MeasurementBasis::ghz_y)
    throw std::invalid_argument("Zeeman tasks measure P_y");
  if (multiparam() && measurement == MeasurementBasis::ghz_y)
    throw std::invalid_argument("multiparameter tasks use a Bell-type measurement");
}

void OutcomeDistribution::validate(double tol) const {
  double sum = 0.0;
  for (double p : probs) {
    if (p < -tol) throw std::domain_error("negative outcome probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol)
    throw std::domain_error("outcome probabilities do not sum to 1");
}

OutcomeDistribution multiparam_probabilities(const std::array<double, 3>& params, double t,
                                             int n_encodings) {
  const double b = params[0], theta = params[1], phi = params[2];
  const double c = std::cos(b * t * n_encodings);
  const double s2 = 1.0 - c * c;
  OutcomeDistribution dist;
  dist.probs = {c * c, s2 * std::cos(theta) * std::cos(theta),
                s2 * std::sin(theta) * std::sin(theta) * std::cos(phi) * std::cos(phi),
                s2 * std::sin(theta) * std::sin(theta) * std::sin(phi) * std::sin(phi)};
  return dist;
}

MultiparamEstimate invert_multiparam(const OutcomeDistribution& dist, double t,
                                     int n_encodings) {
  if (dist.probs.size() != 4)
    throw std::invalid_argument("invert_multiparam expects 4 outcome probabilities");
  MultiparamEstimate est;
  const double p1 = clamp01(dist.probs[0]);
  est.params[0] = std::acos(std::sqrt(p1)) / (t * n_encodings);
  const double s = 1.0 - p1;
  if (s < 1e-12) {
    est.angles_defined = false;
    return est;
  }
  est.params[1] = std::acos(std::sqrt(clamp01(dist.probs[1] / s)));
  const double p3 = std::max(dist.probs[2], 0.0);
  const double p4 = std::max(dist.probs[3], 0.0);
  est.params[2] = std::atan2(std::sqrt(p4), std::sqrt(p3));
  return est;
}

double zeeman_estimator(double p_y, int count) {
  if (count < 1) throw std::invalid_argument("zeeman_estimator: count must be >= 1");
  return std::asin(std::clamp(1.0 - 2.0 * p_y, -1.0, 1.0)) / count;
}

namespace {

double nll_loss(const OutcomeDistribution& empirical, const ProbabilityModel& model,
                double shots, const std::array<double, 3>& params) {
  const OutcomeDistribution q = model(params);
  double loss = 0.0;
  for (std::size_t x = 0; x < empirical.probs.size(); ++x)
    loss -= shots * empirical.probs[x] * std::log(std::max(q.probs[x], kLogFloor));
  return loss;
}

// Nelder-Mead on 3 parameters.
std::pair<std::array<double, 3>, double> nelder_mead(
    const std::function<double(const std::array<double, 3>&)>& f,
    const std::array<double, 3>& start, double step_scale, int max_iter) {
  using Point = std::array<double, 3>;
  struct Vertex {
    Point x;
    double fx;
  };
  std::vector<Vertex> simplex;
  simplex.push_back({start, f(start)});
  for (int i = 0; i < 3; ++i) {
    Point p = start;
    p[i] += step_scale * std::max(std::abs(start[i]), 0.1);
    simplex.push_back({p, f(p)});
  }
  auto order = [&] {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; });
  };
  order();
  for (int iter = 0; iter < max_iter; ++iter) {
    const double spread = std::abs(simplex[3].fx - simplex[0].fx);
    double size = 0.0;
    for (int i = 0; i < 3; ++i)
      size = std::max(size, std::abs(simplex[3].x[i] - simplex[0].x[i]));
    if (spread < 1e-14 * (1.0 + std::abs(simplex[0].fx)) && size < 1e-11) break;

    Point centroid{0, 0, 0};
    for (int v = 0; v < 3; ++v)
      for (int i = 0; i < 3; ++i) centroid[i] += simplex[v].x[i] / 3.0;
    auto blend = [&](double coeff) {
      Point p;
      for (int i = 0; i < 3; ++i) p[i] = centroid[i] + coeff * (simplex[3].x[i] - centroid[i]);
      return p;
    };
    const Point refl = blend(-1.0);
    const double f_refl = f(refl);
    if (f_refl < simplex[0].fx) {
      const Point exp_p = blend(-2.0);
      const double f_exp = f(exp_p);
      simplex[3] = f_exp < f_refl ? Vertex{exp_p, f_exp} : Vertex{refl, f_refl};
    } else if (f_refl < simplex[2].fx) {
      simplex[3] = {refl, f_refl};
    } else {
      const Point contr = blend(f_refl < simplex[3].fx ? -0.5 : 0.5);
      const double f_contr = f(contr);
      if (f_contr < std::min(f_refl, simplex[3].fx)) {
        simplex[3] = {contr, f_contr};
      } else {
        for (int v = 1; v < 4; ++v) {
          for (int i = 0; i < 3; ++i)
            simplex[v].x[i] = simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
          simplex[v].fx = f(simplex[v].x);
        }
      }
    }
    order();
  }
  return {simplex[0].x, simplex[0].fx};
}

}  // namespace

MleResult mle_fit(const OutcomeDistribution& empirical, const ProbabilityModel& model,
                  double shots, const std::array<double, 3>& init, Rng& rng) {
  const auto f = [&](const std::array<double, 3>& p) {
    return nll_loss(empirical, model, shots, p);
  };
  const double init_loss = f(init);

  std::vector<std::array<double, 3>> starts{init};
  for (int r = 0; r < 8; ++r) {
    std::array<double, 3> p = init;
    for (int i = 0; i < 3; ++i) {
      const double scale = std::max(std::abs(init[i]), 0.1);
      p[i] += scale * 0.2 * (2.0 * rng.uniform() - 1.0);
    }
    starts.push_back(p);
  }

  MleResult best;
  best.params = init;
  best.loss = init_loss;
  for (const auto& s : starts) {
    auto [x, fx] = nelder_mead(f, s, 0.1, 600);
    // Polish with a tighter simplex.
    std::tie(x, fx) = nelder_mead(f, x, 0.001, 400);
    if (fx < best.loss) {
      best.loss = fx;
      best.params = x;
    }
  }
  best.improved = best.loss <= init_loss;
  return best;
}

OutcomeDistribution feedback_model_probabilities(const ComplexMatrix& control_1q,
                                                 const std::array<double, 3>& params, double t,
                                                 int n_encodings, MeasurementBasis basis) {
  const ComplexMatrix step = control_1q * spin_evolution(params[0], params[1], params[2], t);
  ComplexMatrix power = identity_matrix(2);
  ComplexMatrix base = step;
  int e = n_encodings;
  while (e > 0) {
    if (e & 1) power = power * base;
    base = base * base;
    e >>= 1;
  }
  const Eigen::VectorXcd state =
      tensor_product(power, identity_matrix(2)) * bell_ket(1);
  const ComplexMatrix meas = basis == MeasurementBasis::rotated_bell
                                 ? rotated_bell_measurement_unitary()
                                 : bell_measurement_unitary();
  const Eigen::VectorXcd amp = meas * state;
  OutcomeDistribution dist;
  dist.probs.resize(4);
  for (int x = 0; x < 4; ++x) dist.probs[x] = std::norm(amp(x));
  return dist;
}

TaskCircuit build_task_circuit(const TaskSpec& task, const NoiseModel& noise,
                               const ComplexMatrix* feedback_control_1q) {
  task.validate();
  noise.validate();
  TaskCircuit circuit;
  const int n_enc = task.encoding_count;

  switch (task.kind) {
    case TaskKind::zeeman_sequential: {
      circuit.register_qubits = 1;
      const QuantumChannel e1 = noise.single_qubit.channel(1);
      circuit.probe = DensityMatrix(
          apply_channel(e1, pure_state(plus_ket()).matrix(), {0}, 1));
      const double lambda = task.true_params[0];
      for (int i = 0; i < n_enc; ++i)
        circuit.gates.push_back(make_gate(zeeman_step(lambda), e1));
      circuit.gates.push_back(make_gate(ghz_y_measurement_unitary(1), e1));
      circuit.outcome_count = 2;
      break;
    }
    case TaskKind::zeeman_parallel: {
      const int n = n_enc;  // one qubit per encoding channel
      if (n > 5) throw std::invalid_argument("parallel task exceeds the 5-qubit register cap");
      circuit.register_qubits = n;
      const QuantumChannel e1 = noise.single_qubit.channel(1);
      const QuantumChannel e2 = noise.two_qubit.channel(2);
      // GHZ preparation: H then a CNOT ladder, gate-class noise after each.
      ComplexMatrix state = pure_state(ket(0, 1 << n)).matrix();
      const ComplexMatrix h_full = embed_operator(hadamard(), {0}, n);
      state = h_full * state * h_full.adjoint();
      state = apply_channel(e1, state, {0}, n);
      for (int q = 0; q + 1 < n; ++q) {
        const ComplexMatrix cx = embed_operator(cnot(), {q, q + 1}, n);
        state = cx * state * cx.adjoint();
        state = apply_channel(e2, state, {q, q + 1}, n);
      }
      circuit.probe = DensityMatrix(std::move(state));
      const double lambda = task.true_params[0];
      for (int q = 0; q < n; ++q) {
        NoisyGate g;
        g.unitary = embed_operator(zeeman_step(lambda), {q}, n);
        g.noise = e1;
        g.noise_targets = {q};
        circuit.gates.push_back(std::move(g));
      }
      NoisyGate meas;
      meas.unitary = ghz_y_measurement_unitary(n);
      meas.noise = noise.single_qubit.channel(n);
      meas.noise_targets.resize(n);
      for (int q = 0; q < n; ++q) meas.noise_targets[q] = q;
      circuit.gates.push_back(std::move(meas));
      circuit.outcome_count = 1 << n;
      break;
    }
    case TaskKind::multiparam_sequential:
    case TaskKind::multiparam_feedback: {
      circuit.register_qubits = 2;
      const QuantumChannel e1 = noise.single_qubit.channel(1);
      const QuantumChannel e2 = noise.two_qubit.channel(2);
      const ComplexMatrix prep = ghz_preparation_unitary(2);
      circuit.probe = DensityMatrix(apply_channel(
          e2, prep * pure_state(ket(0, 4)).matrix() * prep.adjoint(), {0, 1}, 2));
      const auto& p = task.true_params;
      // The encoding unitary and the feedback control act on the first
      // probe qubit only; their noise is single-qubit class. The Bell
      // preparation and measurement rotations are two-qubit gates.
      const ComplexMatrix u_enc =
          field_encoding_unitary(p[0], p[1], p[2], task.evolution_time);
      for (int i = 0; i < n_enc; ++i) {
        NoisyGate enc;
        enc.unitary = u_enc;
        enc.noise = e1;
        enc.noise_targets = {0};
        circuit.gates.push_back(std::move(enc));
        if (feedback_control_1q != nullptr) {
          NoisyGate ctrl;
          ctrl.unitary = tensor_product(*feedback_control_1q, identity_matrix(2));
          ctrl.noise = e1;
          ctrl.noise_targets = {0};
          circuit.gates.push_back(std::move(ctrl));
        }
      }
      circuit.gates.push_back(make_gate(task.measurement == MeasurementBasis::rotated_bell
                                            ? rotated_bell_measurement_unitary()
                                            : bell_measurement_unitary(),
                                        e2));
      circuit.outcome_count = 4;
      break;
    }
  }
  return circuit;
}

namespace {

PurificationCircuit purification_circuit_for(const TaskCircuit& task_circuit,
                                             PurificationMethod method,
                                             const PurificationConfig& config,
                                             const NoiseModel& noise,
                                             const std::optional<NoiseSpec>& pec_assumed,
                                             Rng* rng) {
  PurificationCircuit circuit;
  circuit.register_qubits = task_circuit.register_qubits;
  circuit.order = config.order;
  circuit.cswap = noise.cswap;
  circuit.refresh = config.ancilla_refresh;
  circuit.rng = rng;
  circuit.control_prep_noise = noise.single_qubit.channel(1);
  const bool vsp = method == PurificationMethod::vsp || method == PurificationMethod::pvsp;
  const bool pec = method == PurificationMethod::pvsp || method == PurificationMethod::pvcp;
  if (vsp) {
    circuit.vsp = true;
    circuit.layers = 1;
  } else {
    circuit.layers = config.layers;
    circuit.blocks = split_into_blocks(task_circuit.gates, config.layers);
  }
  if (pec) {
    const NoiseSpec* assumed = pec_assumed ? &*pec_assumed : nullptr;
    circuit.pec_sites =
        pec_sites_for(noise.cswap, circuit.register_qubits, circuit.layers, assumed);
  }
  return circuit;
}

MethodEvaluation from_outcome(const PurificationOutcome& outcome) {
  MethodEvaluation eval;
  eval.numerators = outcome.numerators;
  eval.denominator = outcome.denominator;
  eval.gamma = outcome.gamma;
  if (std::abs(outcome.denominator) < kDenominatorFloor)
    throw std::domain_error("purification denominator below 1e-12 (eta ~ 0 breakdown)");
  eval.probabilities.resize(outcome.numerators.size());
  for (std::size_t x = 0; x < outcome.numerators.size(); ++x)
    eval.probabilities[x] = outcome.numerators[x] / outcome.denominator;
  return eval;
}

MethodEvaluation sample_outcome(const PurificationOutcome& outcome, long shots, Rng& rng) {
  MethodEvaluation eval;
  eval.gamma = outcome.gamma;
  const std::size_t outcomes = outcome.numerators.size();
  const bool single_branch = outcome.branch_probs.size() == 1;
  const DiscreteSampler branch_sampler(outcome.branch_probs);
  std::vector<DiscreteSampler> joint_samplers;
  joint_samplers.reserve(outcome.branch_joint.size());
  for (const auto& joint : outcome.branch_joint) joint_samplers.emplace_back(joint);

  std::vector<double> num(outcomes, 0.0);
  double den = 0.0;
  for (long shot = 0; shot < shots; ++shot) {
    const int b = single_branch ? 0 : branch_sampler.draw(rng);
    const int cell = joint_samplers[b].draw(rng);
    const int s = cell < static_cast<int>(outcomes) ? 1 : -1;
    const int x = cell % static_cast<int>(outcomes);
    num[x] += outcome.branch_signs[b] * outcome.gamma * s;
    // Final-layer corrections never move ⟨X ⊗ I⟩, so the denominator only
    // reweights over the earlier layers' branch choices; for a single layer
    // it is the plain shot mean and Var(y) stays at its unmitigated value.
    den += outcome.branch_prefix_signs[b] * outcome.gamma_prefix * s;
  }
  for (double& v : num) v /= static_cast<double>(shots);
  den /= static_cast<double>(shots);
  if (std::abs(den) < kDenominatorFloor)
    throw std::domain_error("sampled purification denominator vanished");
  eval.numerators = num;
  eval.denominator = den;
  eval.probabilities.resize(outcomes);
  for (std::size_t x = 0; x < outcomes; ++x) eval.probabilities[x] = num[x] / den;
  return eval;
}

}  // namespace

PreparedMethod prepare_method(const TaskCircuit& circuit, PurificationMethod method,
                              const PurificationConfig& config, const NoiseModel& noise,
                              const std::optional<NoiseSpec>& pec_assumed, Rng* rng) {
  PreparedMethod prepared;
  if (method == PurificationMethod::none) {
    const DensityMatrix rho = build_noisy_target(circuit.gates, circuit.probe);
    prepared.exact_probs.resize(circuit.outcome_count);
    for (int x = 0; x < circuit.outcome_count; ++x)
      prepared.exact_probs[x] = std::max(rho.matrix()(x, x).real(), 0.0);
    return prepared;
  }
  PurificationConfig cfg = config;
  cfg.method = method;
  if (method == PurificationMethod::vsp || method == PurificationMethod::pvsp) cfg.layers = 1;
  cfg.validate();
  PurificationCircuit pc =
      purification_circuit_for(circuit, method, cfg, noise, pec_assumed, rng);
  const DensityMatrix input = pc.vsp ? build_noisy_target(circuit.gates, circuit.probe)
                                     : circuit.probe;
  if (branch_count(pc.pec_sites) > kBranchEnumerationCap) {
    prepared.over_cap_circuit = std::move(pc);
    prepared.over_cap_input = input;
    return prepared;
  }
  prepared.outcome = purification_outcome(pc, input);
  return prepared;
}

namespace {

// Per-shot Monte-Carlo path for branch lattices beyond the enumeration
// cap: draw one branch, simulate that single circuit, draw one outcome.
MethodEvaluation sample_over_cap(const PurificationCircuit& circuit, const DensityMatrix& input,
                                 long shots, Rng& rng) {
  const int n = circuit.register_qubits;
  const std::size_t outcomes = 1UL << n;
  const int layers = circuit.vsp ? 1 : circuit.layers;
  const std::size_t prefix_sites = static_cast<std::size_t>((layers - 1) * n);
  double gamma = 1.0, gamma_prefix = 1.0;
  for (std::size_t k = 0; k < circuit.pec_sites.size(); ++k) {
    gamma *= circuit.pec_sites[k].gamma;
    if (k < prefix_sites) gamma_prefix *= circuit.pec_sites[k].gamma;
  }

  std::vector<double> num(outcomes, 0.0);
  double den = 0.0;
  for (long shot = 0; shot < shots; ++shot) {
    const BranchSample branch = draw_branch(circuit.pec_sites, rng);
    int prefix_sign = 1;
    PurificationCircuit fixed = circuit;
    for (std::size_t k = 0; k < fixed.pec_sites.size(); ++k) {
      const PecTerm term = circuit.pec_sites[k].terms[branch.term_indices[k]];
      if (k < prefix_sites && term.alpha < 0.0) prefix_sign = -prefix_sign;
      fixed.pec_sites[k].terms = {{1.0, term.op}};
      fixed.pec_sites[k].gamma = 1.0;
    }
    const auto one = purification_outcome(fixed, input);
    const DiscreteSampler sampler(one.branch_joint.front());
    const int cell = sampler.draw(rng);
    const int s = cell < static_cast<int>(outcomes) ? 1 : -1;
    const int x = cell % static_cast<int>(outcomes);
    num[x] += branch.sign * gamma * s;
    den += prefix_sign * gamma_prefix * s;
  }
  MethodEvaluation eval;
  eval.gamma = gamma;
  for (double& v : num) v /= static_cast<double>(shots);
  den /= static_cast<double>(shots);
  if (std::abs(den) < kDenominatorFloor)
    throw std::domain_error("sampled purification denominator vanished");
  eval.numerators = num;
  eval.denominator = den;
  eval.probabilities.resize(outcomes);
  for (std::size_t x = 0; x < outcomes; ++x) eval.probabilities[x] = num[x] / den;
  return eval;
}

}  // namespace

MethodEvaluation evaluate_prepared(const PreparedMethod& prepared, std::optional<long> shots,
                                   Rng* rng) {
  if (shots && *shots < 1) throw std::invalid_argument("shot count must be >= 1");
  if (shots && rng == nullptr) throw std::invalid_argument("shot mode needs a random stream");

  if (prepared.over_cap_circuit) {
    if (!shots)
      throw std::length_error(
          "PEC branch lattice exceeds the enumeration cap of 4096; Monte-Carlo shots required");
    return sample_over_cap(*prepared.over_cap_circuit, prepared.over_cap_input, *shots, *rng);
  }

  if (!prepared.outcome) {
    MethodEvaluation eval;
    if (!shots) {
      eval.probabilities = prepared.exact_probs;
      return eval;
    }
    const DiscreteSampler sampler(prepared.exact_probs);
    std::vector<long> counts(prepared.exact_probs.size(), 0);
    for (long shot = 0; shot < *shots; ++shot) ++counts[sampler.draw(*rng)];
    eval.probabilities.resize(prepared.exact_probs.size());
    for (std::size_t x = 0; x < prepared.exact_probs.size(); ++x)
      eval.probabilities[x] = static_cast<double>(counts[x]) / static_cast<double>(*shots);
    return eval;
  }
  if (!shots) return from_outcome(*prepared.outcome);
  return sample_outcome(*prepared.outcome, *shots, *rng);
}

MethodEvaluation evaluate_method(const TaskCircuit& circuit, PurificationMethod method,
                                 const PurificationConfig& config, const NoiseModel& noise,
                                 const std::optional<NoiseSpec>& pec_assumed,
                                 std::optional<long> shots, Rng* rng) {
  return evaluate_prepared(prepare_method(circuit, method, config, noise, pec_assumed, rng),
                           shots, rng);
}

std::vector<double> estimate_parameters(const TaskSpec& task,
                                        const std::vector<double>& probabilities) {
  if (task.zeeman()) {
    // Outcome index 1 carries P_y after the measurement rotation.
    const double p_y = probabilities.at(1);
    return {zeeman_estimator(p_y, task.encoding_count)};
  }
  OutcomeDistribution dist;
  dist.probs = probabilities;
  const MultiparamEstimate est =
      invert_multiparam(dist, task.evolution_time, task.encoding_count);
  return {est.params[0], est.params[1], est.params[2]};
}

double l1_gap(const std::vector<double>& truth, const std::vector<double>& estimate) {
  if (truth.size() != estimate.size()) throw std::invalid_argument("l1_gap: size mismatch");
  double gap = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) gap += std::abs(truth[i] - estimate[i]);
  return gap;
}

namespace {

std::array<double, 3> grid_search_init(const OutcomeDistribution& empirical,
                                       const ProbabilityModel& model, double shots) {
  std::array<double, 3> best{0.5, 0.5, 0.5};
  double best_loss = nll_loss(empirical, model, shots, best);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (int k = 0; k < 8; ++k) {
        const std::array<double, 3> p{0.08 + i * (1.45 / 7), 0.08 + j * (1.45 / 7),
                                      0.08 + k * (1.45 / 7)};
        const double loss = nll_loss(empirical, model, shots, p);
        if (loss < best_loss) {
          best_loss = loss;
          best = p;
        }
      }
  return best;
}

}  // namespace

std::vector<FeedbackRecord> run_feedback_loop(const TaskSpec& task, const NoiseModel& noise,
                                              PurificationMethod method,
                                              const PurificationConfig& config, int iterations,
                                              std::optional<long> shots, Rng& rng,
                                              const std::optional<NoiseSpec>& pec_assumed) {
  if (task.kind != TaskKind::multiparam_feedback)
    throw std::invalid_argument("run_feedback_loop needs a multiparam-feedback task");
  task.validate();
  std::vector<FeedbackRecord> records;
  if (iterations <= 0) return records;

  const std::array<double, 3> truth{task.true_params[0], task.true_params[1],
                                    task.true_params[2]};
  ComplexMatrix control = identity_matrix(2);
  std::array<double, 3> estimate{0.0, 0.0, 0.0};
  const double loss_shots = shots ? static_cast<double>(*shots) : 1.0;

  for (int it = 0; it < iterations; ++it) {
    const bool identity_control = it == 0;
    const TaskCircuit circuit = build_task_circuit(task, noise, &control);
    Rng iter_rng = rng.split(static_cast<std::uint64_t>(it));
    const MethodEvaluation eval =
        evaluate_method(circuit, method, config, noise, pec_assumed, shots, &iter_rng);

    // Clamp mitigated ratios into a valid distribution for the likelihood.
    OutcomeDistribution empirical;
    empirical.probs.resize(eval.probabilities.size());
    double total = 0.0;
    for (std::size_t x = 0; x < eval.probabilities.size(); ++x) {
      empirical.probs[x] = clamp01(eval.probabilities[x]);
      total += empirical.probs[x];
    }
    if (total > 0.0)
      for (double& p : empirical.probs) p /= total;

    const ComplexMatrix control_copy = control;
    const ProbabilityModel model = [&](const std::array<double, 3>& params) {
      return feedback_model_probabilities(control_copy, params, task.evolution_time,
                                          task.encoding_count, task.measurement);
    };

    const std::array<double, 3> init =
        it == 0 ? grid_search_init(empirical, model, loss_shots) : estimate;
    Rng mle_rng = iter_rng.split(0x4d4c45ULL);
    estimate = mle_fit(empirical, model, loss_shots, init, mle_rng).params;

    const OutcomeDistribution p_v = feedback_model_probabilities(
        control, truth, task.evolution_time, task.encoding_count, task.measurement);

    FeedbackRecord rec;
    rec.iteration = it;
    rec.estimate = estimate;
    rec.param_gap = l1_gap({truth[0], truth[1], truth[2]},
                           {estimate[0], estimate[1], estimate[2]});
    rec.prob_gap = l1_gap(p_v.probs, empirical.probs);
    rec.empirical = empirical.probs;
    rec.control_was_identity = identity_control;
    records.push_back(std::move(rec));

    control = spin_evolution(estimate[0], estimate[1], estimate[2], task.evolution_time)
                  .adjoint();
  }
  return records;
}

}  // namespace vpurify
