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

#include "vpurify/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace vpurify {

void ExperimentSpec::validate() const {
  task.validate();
  noise.validate();
  if (mitigation.method != PurificationMethod::none) {
    // mitigation.layers is the layer budget; single-layer schemes ignore it.
    PurificationConfig effective = mitigation;
    if (mitigation.method == PurificationMethod::vsp ||
        mitigation.method == PurificationMethod::pvsp)
      effective.layers = 1;
    effective.validate();
  }
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (shots && *shots < 1) throw std::invalid_argument("shots must be >= 1 in shot mode");
}

RatioSampleEstimate shot_sample_ratio(const std::vector<JointOutcome>& dist, long shots,
                                      Rng& rng) {
  if (dist.empty()) throw std::invalid_argument("shot_sample_ratio: empty distribution");
  double total = 0.0;
  std::vector<double> weights(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i].prob < -1e-12) throw std::invalid_argument("negative joint probability");
    if (dist[i].x != 1 && dist[i].x != -1)
      throw std::invalid_argument("control outcome must be +1 or -1");
    weights[i] = std::max(dist[i].prob, 0.0);
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("joint distribution does not sum to 1");

  const DiscreteSampler sampler(weights);
  RatioSampleEstimate est;
  for (long s = 0; s < shots; ++s) {
    const JointOutcome& draw = dist[sampler.draw(rng)];
    est.numerator += draw.x * draw.o;
    est.denominator += draw.x;
  }
  est.numerator /= static_cast<double>(shots);
  est.denominator /= static_cast<double>(shots);
  return est;
}

ConfidenceInterval confidence_interval(const std::vector<double>& values) {
  if (values.size() < 2)
    throw std::invalid_argument("confidence_interval needs at least 2 values");
  const double t = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= t;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (t - 1.0));
  const double half = 1.96 * sd / std::sqrt(t);
  return {mean, mean - half, mean + half};
}

int select_optimal_layer(const std::vector<EstimateRecord>& records) {
  if (records.empty()) throw std::invalid_argument("select_optimal_layer: no records");
  std::map<int, std::pair<double, int>> by_layer;  // L -> (gap sum, count)
  for (const auto& r : records) {
    auto& acc = by_layer[r.layers];
    acc.first += r.gap;
    acc.second += 1;
  }
  int best_l = by_layer.begin()->first;
  double best_gap = by_layer.begin()->second.first / by_layer.begin()->second.second;
  for (const auto& [l, acc] : by_layer) {
    const double mean = acc.first / acc.second;
    if (mean < best_gap - 1e-15) {  // ties keep the smaller L
      best_gap = mean;
      best_l = l;
    }
  }
  return best_l;
}

namespace {

EstimateRecord make_record(const ExperimentSpec& spec, int trial, std::uint64_t seed,
                           int layers, const MethodEvaluation& eval,
                           const std::string& method_label) {
  EstimateRecord rec;
  rec.trial = trial;
  rec.method = method_label;
  rec.n_encodings = spec.task.encoding_count;
  rec.rate = spec.noise.cswap.local_rate;
  rec.layers = layers;
  rec.order = spec.mitigation.order;
  rec.seed = seed;
  rec.estimate = estimate_parameters(spec.task, eval.probabilities);
  rec.gap = l1_gap(spec.task.true_params, rec.estimate);
  rec.numerator = eval.numerators.empty() ? eval.probabilities.at(spec.task.zeeman() ? 1 : 0)
                                          : eval.numerators.at(spec.task.zeeman() ? 1 : 0);
  rec.denominator = eval.denominator;
  rec.gamma = eval.gamma;
  return rec;
}

}  // namespace

std::vector<EstimateRecord> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<EstimateRecord> records;

  const bool exact = !spec.shots.has_value();
  const int trials = exact ? 1 : spec.trials;  // exact trials collapse
  const auto method = spec.mitigation.method;
  const bool layered =
      method == PurificationMethod::vcp || method == PurificationMethod::pvcp;
  std::vector<std::optional<PreparedMethod>> prepared_cache;

  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t seed = derive_seed(spec.master_seed, static_cast<std::uint64_t>(trial));

    if (spec.task.kind == TaskKind::multiparam_feedback) {
      Rng rng(seed);
      const auto history =
          run_feedback_loop(spec.task, spec.noise, method, spec.mitigation,
                            spec.feedback_iterations, spec.shots, rng, spec.pec_assumed_noise);
      if (history.empty()) continue;
      const auto& last = history.back();
      EstimateRecord rec;
      rec.trial = trial;
      rec.method = to_string(method);
      rec.n_encodings = spec.task.encoding_count;
      rec.rate = spec.noise.cswap.local_rate;
      rec.layers = layered ? spec.mitigation.layers : 0;
      rec.order = spec.mitigation.order;
      rec.seed = seed;
      rec.estimate = {last.estimate[0], last.estimate[1], last.estimate[2]};
      rec.gap = last.param_gap;
      rec.denominator = 1.0;
      records.push_back(std::move(rec));
      continue;
    }

    const TaskCircuit circuit = build_task_circuit(spec.task, spec.noise);
    const int max_layers = layered ? spec.mitigation.layers : 1;
    for (int layers = 1; layers <= max_layers; ++layers) {
      PurificationConfig cfg = spec.mitigation;
      cfg.layers = layers;
      // The deterministic outcome is shared across trials; only sampling
      // reseeds.
      const std::size_t key = static_cast<std::size_t>(layers);
      if (prepared_cache.size() < key + 1) prepared_cache.resize(key + 1);
      if (!prepared_cache[key])
        prepared_cache[key] = prepare_method(circuit, method, cfg, spec.noise,
                                             spec.pec_assumed_noise);
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(layers)));
      const MethodEvaluation eval =
          evaluate_prepared(*prepared_cache[key], spec.shots, &rng);
      records.push_back(make_record(spec, trial, seed, layered ? layers : 0, eval,
                                    to_string(method)));
    }
  }
  return records;
}

void attach_confidence_intervals(std::vector<EstimateRecord>& records) {
  std::map<std::tuple<std::string, int, int, double>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < records.size(); ++i)
    groups[{records[i].method, records[i].n_encodings, records[i].layers, records[i].rate}]
        .push_back(i);
  for (const auto& [key, idx] : groups) {
    if (idx.size() < 2) {
      for (std::size_t i : idx) {
        records[i].ci_low = records[i].gap;
        records[i].ci_high = records[i].gap;
      }
      continue;
    }
    std::vector<double> gaps;
    for (std::size_t i : idx) gaps.push_back(records[i].gap);
    const ConfidenceInterval ci = confidence_interval(gaps);
    for (std::size_t i : idx) {
      records[i].ci_low = ci.low;
      records[i].ci_high = ci.high;
    }
  }
}

void sort_records(std::vector<EstimateRecord>& records) {
  std::sort(records.begin(), records.end(), [](const EstimateRecord& a, const EstimateRecord& b) {
    if (a.method != b.method) return a.method < b.method;
    if (a.n_encodings != b.n_encodings) return a.n_encodings < b.n_encodings;
    if (a.trial != b.trial) return a.trial < b.trial;
    if (a.layers != b.layers) return a.layers < b.layers;
    return a.rate < b.rate;
  });
}

}  // namespace vpurify
