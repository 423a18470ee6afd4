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

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "vpurify/harness.hpp"

namespace vpurify {
namespace {

std::vector<JointOutcome> simple_joint() {
  // Correlated control/target pair with nontrivial covariance.
  return {{0.4, 1, 1.0}, {0.1, 1, -1.0}, {0.2, -1, 1.0}, {0.3, -1, -1.0}};
}

TEST(ShotSampleRatio, LawOfLargeNumbers) {
  const auto dist = simple_joint();
  double mu_num = 0.0, mu_den = 0.0, var_num = 0.0, var_den = 0.0;
  for (const auto& jo : dist) {
    mu_num += jo.prob * jo.x * jo.o;
    mu_den += jo.prob * jo.x;
  }
  for (const auto& jo : dist) {
    var_num += jo.prob * (jo.x * jo.o - mu_num) * (jo.x * jo.o - mu_num);
    var_den += jo.prob * (jo.x - mu_den) * (jo.x - mu_den);
  }
  const long nu = 1000000;
  Rng rng(81);
  const auto est = shot_sample_ratio(dist, nu, rng);
  EXPECT_NEAR(est.numerator, mu_num, 5.0 * std::sqrt(var_num / nu));
  EXPECT_NEAR(est.denominator, mu_den, 5.0 * std::sqrt(var_den / nu));
}

TEST(ShotSampleRatio, DeterministicDistributionHasNoVariance) {
  const std::vector<JointOutcome> dist{{1.0, 1, -1.0}};
  Rng rng(82);
  for (int rep = 0; rep < 5; ++rep) {
    const auto est = shot_sample_ratio(dist, 1000, rng);
    EXPECT_EQ(est.numerator, -1.0);
    EXPECT_EQ(est.denominator, 1.0);
  }
}

TEST(ShotSampleRatio, CovarianceMatchesJointMoments) {
  const auto dist = simple_joint();
  double mu_a = 0.0, mu_b = 0.0, e_ab = 0.0, e_aa = 0.0, e_bb = 0.0;
  for (const auto& jo : dist) {
    const double a = jo.x * jo.o, b = jo.x;
    mu_a += jo.prob * a;
    mu_b += jo.prob * b;
    e_ab += jo.prob * a * b;
    e_aa += jo.prob * a * a;
    e_bb += jo.prob * b * b;
  }
  const double cov1 = e_ab - mu_a * mu_b;
  ASSERT_GT(std::abs(cov1), 0.01);  // nonzero by construction

  const long nu = 200;
  const int reps = 4000;
  Rng rng(83);
  std::vector<double> nums, dens;
  for (int rep = 0; rep < reps; ++rep) {
    const auto est = shot_sample_ratio(dist, nu, rng);
    nums.push_back(est.numerator);
    dens.push_back(est.denominator);
  }
  double mean_n = 0.0, mean_d = 0.0;
  for (int i = 0; i < reps; ++i) {
    mean_n += nums[i];
    mean_d += dens[i];
  }
  mean_n /= reps;
  mean_d /= reps;
  double cov_emp = 0.0;
  for (int i = 0; i < reps; ++i) cov_emp += (nums[i] - mean_n) * (dens[i] - mean_d);
  cov_emp /= (reps - 1.0);
  const double expected = cov1 / nu;
  const double var_a = e_aa - mu_a * mu_a, var_b = e_bb - mu_b * mu_b;
  const double se = std::sqrt((var_a * var_b + cov1 * cov1) / (nu * nu)) / std::sqrt(reps);
  EXPECT_NEAR(cov_emp, expected, 5.0 * se);
}

TEST(ShotSampleRatio, RejectsInvalidInputs) {
  Rng rng(84);
  EXPECT_THROW(shot_sample_ratio({}, 10, rng), std::invalid_argument);
  EXPECT_THROW(shot_sample_ratio({{0.5, 2, 1.0}, {0.5, 1, 1.0}}, 10, rng),
               std::invalid_argument);
  EXPECT_THROW(shot_sample_ratio({{0.5, 1, 1.0}}, 10, rng), std::invalid_argument);
}

TEST(ConfidenceInterval, DegenerateAndClosedForm) {
  const auto zero_width = confidence_interval({0.7, 0.7, 0.7});
  EXPECT_NEAR(zero_width.mean, 0.7, 1e-15);
  EXPECT_NEAR(zero_width.high - zero_width.low, 0.0, 1e-15);

  const auto pair = confidence_interval({0.0, 1.0});
  EXPECT_NEAR(pair.mean, 0.5, 1e-15);
  EXPECT_NEAR(pair.high - pair.mean, 1.96 * std::sqrt(0.5) / std::sqrt(2.0), 1e-12);

  EXPECT_THROW(confidence_interval({1.0}), std::invalid_argument);
}

TEST(ConfidenceInterval, CoverageNearNominal) {
  Rng rng(85);
  const int meta = 1000, per_group = 100;
  int covered = 0;
  for (int rep = 0; rep < meta; ++rep) {
    std::vector<double> values(per_group);
    for (double& v : values) v = 3.0 + 0.5 * testing::gaussian(rng);
    const auto ci = confidence_interval(values);
    if (ci.low <= 3.0 && 3.0 <= ci.high) ++covered;
  }
  const double coverage = static_cast<double>(covered) / meta;
  EXPECT_NEAR(coverage, 0.95, 3.0 * std::sqrt(0.95 * 0.05 / meta));
}

EstimateRecord record_with(int layers, double gap) {
  EstimateRecord rec;
  rec.layers = layers;
  rec.gap = gap;
  return rec;
}

TEST(SelectOptimalLayer, SingleAndTies) {
  EXPECT_EQ(select_optimal_layer({record_with(2, 0.5)}), 2);
  EXPECT_EQ(select_optimal_layer({record_with(1, 0.5), record_with(2, 0.5)}), 1);
  EXPECT_EQ(select_optimal_layer(
                {record_with(1, 0.5), record_with(2, 0.3), record_with(3, 0.4)}),
            2);
  EXPECT_THROW(select_optimal_layer({}), std::invalid_argument);
}

ExperimentSpec zeeman_spec() {
  ExperimentSpec spec;
  spec.task.kind = TaskKind::zeeman_sequential;
  spec.task.true_params = {M_PI / 4.0 * 1e-4};
  spec.task.encoding_count = 100;
  spec.task.measurement = MeasurementBasis::ghz_y;
  spec.noise.single_qubit = {NoiseFamily::depolarizing, 0.001, {}};
  spec.noise.two_qubit = {NoiseFamily::depolarizing, 0.01, {}};
  spec.noise.cswap = {NoiseFamily::depolarizing, 0.05, std::nullopt};
  spec.mitigation.order = 2;
  spec.mitigation.pec_mode = PecMode::exact_branch_sum;
  spec.master_seed = 99;
  return spec;
}

TEST(SelectOptimalLayer, SingleParameterScanPrefersMoreLayersWithPec) {
  // Infinite-shot single-parameter setting: VCP's optimal layer stays low,
  // PEC pushes it higher.
  ExperimentSpec vcp = zeeman_spec();
  vcp.mitigation.method = PurificationMethod::vcp;
  vcp.mitigation.layers = 5;
  const auto vcp_records = run_experiment(vcp);
  const int vcp_best = select_optimal_layer(vcp_records);

  ExperimentSpec pvcp = vcp;
  pvcp.mitigation.method = PurificationMethod::pvcp;
  const auto pvcp_records = run_experiment(pvcp);
  const int pvcp_best = select_optimal_layer(pvcp_records);

  EXPECT_LE(vcp_best, 2);
  EXPECT_GT(pvcp_best, vcp_best);
}

TEST(RunExperiment, NoiselessExactNoneHasZeroGap) {
  ExperimentSpec spec;
  spec.task.kind = TaskKind::multiparam_sequential;
  spec.task.true_params = {1.0, 0.9, 0.8};
  spec.task.evolution_time = 0.001;
  spec.task.encoding_count = 10;
  spec.task.measurement = MeasurementBasis::bell;
  spec.noise.single_qubit = {NoiseFamily::depolarizing, 0.0, {}};
  spec.noise.two_qubit = {NoiseFamily::depolarizing, 0.0, {}};
  spec.noise.cswap = {NoiseFamily::depolarizing, 0.0, std::nullopt};
  spec.mitigation.method = PurificationMethod::none;
  const auto records = run_experiment(spec);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_LT(records[0].gap, 1e-9);
}

TEST(RunExperiment, DeterministicAcrossRuns) {
  ExperimentSpec spec = zeeman_spec();
  spec.mitigation.method = PurificationMethod::pvcp;
  spec.mitigation.layers = 2;
  spec.shots = 5000;
  spec.trials = 3;
  const auto a = run_experiment(spec);
  const auto b = run_experiment(spec);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].gap, b[i].gap);
    EXPECT_EQ(a[i].estimate, b[i].estimate);
    EXPECT_EQ(a[i].seed, b[i].seed);
  }
}

TEST(RunExperiment, ExactModeCollapsesTrials) {
  ExperimentSpec spec = zeeman_spec();
  spec.mitigation.method = PurificationMethod::vsp;
  spec.trials = 7;
  const auto records = run_experiment(spec);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].trial, 0);
}

TEST(RunExperiment, LayeredMethodsEmitPerLayerRecords) {
  ExperimentSpec spec = zeeman_spec();
  spec.mitigation.method = PurificationMethod::vcp;
  spec.mitigation.layers = 3;
  const auto records = run_experiment(spec);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].layers, 1);
  EXPECT_EQ(records[2].layers, 3);
}

TEST(RunExperiment, SeedsAreIndependentAcrossTrials) {
  const std::uint64_t master = 1234;
  const std::uint64_t s0 = derive_seed(master, 0);
  const std::uint64_t s1 = derive_seed(master, 1);
  EXPECT_NE(s0, s1);
  Rng a(s0), b(s1);
  const int n = 20000;
  double corr = 0.0;
  for (int i = 0; i < n; ++i)
    corr += (a.uniform() - 0.5) * (b.uniform() - 0.5);
  corr /= n;
  // Independent uniforms: Cov = 0 with SE = 1/(12 sqrt(n)).
  EXPECT_LT(std::abs(corr), 4.0 / (12.0 * std::sqrt(static_cast<double>(n))));
}

TEST(Records, SortAndAttachIntervals) {
  std::vector<EstimateRecord> records;
  for (int trial = 0; trial < 3; ++trial) {
    EstimateRecord rec;
    rec.trial = 2 - trial;
    rec.method = "vcp";
    rec.n_encodings = 10;
    rec.layers = 1;
    rec.gap = 0.1 * (trial + 1);
    records.push_back(rec);
  }
  attach_confidence_intervals(records);
  sort_records(records);
  EXPECT_EQ(records.front().trial, 0);
  const auto ci = confidence_interval({0.1, 0.2, 0.3});
  for (const auto& rec : records) {
    EXPECT_NEAR(rec.ci_low, ci.low, 1e-12);
    EXPECT_NEAR(rec.ci_high, ci.high, 1e-12);
  }
}

TEST(ExperimentSpec, Validation) {
  ExperimentSpec spec = zeeman_spec();
  spec.trials = 0;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.trials = 1;
  spec.shots = 0;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace vpurify
