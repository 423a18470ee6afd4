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

#include <numeric>

#include "test_util.hpp"
#include "vpurify/pec.hpp"

namespace vpurify {
namespace {

double closed_form_gamma(NoiseFamily family, double p) {
  switch (family) {
    case NoiseFamily::depolarizing: return (1.0 + p / 2.0) / (1.0 - p);
    case NoiseFamily::dephasing: return 1.0 / (1.0 - 2.0 * p);
    case NoiseFamily::amplitude_damping: return (1.0 + p) / (1.0 - p);
    default: throw std::logic_error("no closed form");
  }
}

TEST(Decomposition, DephasingCoefficients) {
  const PecDecomposition dec = decomposition_for(NoiseFamily::dephasing, 0.1);
  ASSERT_EQ(dec.terms.size(), 2u);
  EXPECT_NEAR(dec.terms[0].alpha, 1.125, 1e-14);
  EXPECT_NEAR(dec.terms[1].alpha, -0.125, 1e-14);
  EXPECT_EQ(dec.terms[1].op, PecOperation::z);
  EXPECT_NEAR(dec.gamma, 1.25, 1e-14);
}

TEST(Decomposition, DepolarizingAtZero) {
  const PecDecomposition dec = decomposition_for(NoiseFamily::depolarizing, 0.0);
  ASSERT_EQ(dec.terms.size(), 4u);
  EXPECT_NEAR(dec.terms[0].alpha, 1.0, 1e-15);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(dec.terms[i].alpha, 0.0, 1e-15);
  EXPECT_NEAR(dec.gamma, 1.0, 1e-15);
}

TEST(Decomposition, AmplitudeDampingExactCoefficients) {
  const double p = 0.05;
  const PecDecomposition dec = decomposition_for(NoiseFamily::amplitude_damping, p);
  const double r = std::sqrt(1.0 - p);
  ASSERT_EQ(dec.terms.size(), 3u);
  EXPECT_NEAR(dec.terms[0].alpha, (1.0 + r) / (2.0 * (1.0 - p)), 1e-14);
  EXPECT_NEAR(dec.terms[1].alpha, (1.0 - r) / (2.0 * (1.0 - p)), 1e-14);
  EXPECT_NEAR(dec.terms[2].alpha, -p / (1.0 - p), 1e-14);
  EXPECT_EQ(dec.terms[2].op, PecOperation::reset_zero);
  double sum = 0.0;
  for (const auto& t : dec.terms) sum += t.alpha;
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_NEAR(dec.gamma, 1.105263157894737, 1e-12);
  EXPECT_LT(validate_inverse(dec, make_channel(NoiseFamily::amplitude_damping, p, 1)), 1e-12);
}

TEST(Decomposition, CoefficientsSumToOneAndGammaClosedForm) {
  for (const auto family :
       {NoiseFamily::depolarizing, NoiseFamily::dephasing, NoiseFamily::amplitude_damping})
    for (double p : {0.01, 0.05, 0.1, 0.2, 0.4}) {
      if (family == NoiseFamily::dephasing && p >= 0.5) continue;
      const PecDecomposition dec = decomposition_for(family, p);
      double sum = 0.0;
      for (const auto& t : dec.terms) sum += t.alpha;
      EXPECT_NEAR(sum, 1.0, 1e-12);
      EXPECT_GE(dec.gamma, 1.0);
      EXPECT_NEAR(dec.gamma, closed_form_gamma(family, p), 1e-12);
    }
}

TEST(Decomposition, GammaMonotoneInRate) {
  for (const auto family :
       {NoiseFamily::depolarizing, NoiseFamily::dephasing, NoiseFamily::amplitude_damping}) {
    double prev = 1.0;
    for (double p = 0.02; p < 0.45; p += 0.02) {
      if (family == NoiseFamily::dephasing && p >= 0.5) break;
      const double gamma = decomposition_for(family, p).gamma;
      EXPECT_GT(gamma, prev);
      prev = gamma;
    }
  }
}

TEST(Decomposition, DephasingDivergenceThrows) {
  EXPECT_THROW(decomposition_for(NoiseFamily::dephasing, 0.5), std::domain_error);
  EXPECT_THROW(decomposition_for(NoiseFamily::dephasing, 0.4999999999), std::domain_error);
  EXPECT_NO_THROW(decomposition_for(NoiseFamily::dephasing, 0.49));
}

TEST(ValidateInverse, ExactForAllFamilies) {
  for (const auto family :
       {NoiseFamily::depolarizing, NoiseFamily::dephasing, NoiseFamily::amplitude_damping})
    for (double p : {0.01, 0.05, 0.1}) {
      const PecDecomposition dec = decomposition_for(family, p);
      EXPECT_LT(validate_inverse(dec, make_channel(family, p, 1)), 1e-12);
    }
}

TEST(ValidateInverse, ZeroRateIsExactlyZero) {
  for (const auto family :
       {NoiseFamily::depolarizing, NoiseFamily::dephasing, NoiseFamily::amplitude_damping}) {
    const PecDecomposition dec = decomposition_for(family, 0.0);
    EXPECT_LT(validate_inverse(dec, make_channel(family, 0.0, 1)), 1e-15);
  }
}

TEST(ValidateInverse, MismatchedRateReportsDeviation) {
  const PecDecomposition dec = decomposition_for(NoiseFamily::depolarizing, 0.055);
  const double dev = validate_inverse(dec, make_channel(NoiseFamily::depolarizing, 0.05, 1));
  EXPECT_GT(dev, 1e-4);
  EXPECT_LT(dev, 0.05);
}

TEST(ExactMitigated, BranchIndependentEvaluatorPassesThrough) {
  const std::vector<PecDecomposition> sites{decomposition_for(NoiseFamily::depolarizing, 0.1),
                                            decomposition_for(NoiseFamily::dephasing, 0.1)};
  const auto mv =
      exact_mitigated_expectation(sites, [](std::span<const int>) { return 0.7312; });
  EXPECT_NEAR(mv.value, 0.7312, 1e-12);  // Σα = 1 per site
  EXPECT_NEAR(mv.gamma_total, sites[0].gamma * sites[1].gamma, 1e-14);
}

TEST(ExactMitigated, DephasingSiteBeforeDiagonalObservable) {
  // 2x2 oracle: one dephasing site ahead of a Z measurement.
  Rng rng(31);
  const DensityMatrix rho = testing::random_density(rng, 1);
  const QuantumChannel noise = make_channel(NoiseFamily::dephasing, 0.1, 1);
  const std::vector<PecDecomposition> sites{decomposition_for(NoiseFamily::dephasing, 0.1)};
  const auto mv = exact_mitigated_expectation(sites, [&](std::span<const int> branch) {
    ComplexMatrix state =
        apply_channel(pec_operation_channel(sites[0].terms[branch[0]].op), rho.matrix(), {0}, 1);
    return expectation(pauli('Z'), noise.apply_full(state));
  });
  EXPECT_NEAR(mv.value, expectation(pauli('Z'), rho), 1e-12);
}

TEST(ExactMitigated, ThreeSitesCubeGamma) {
  const PecDecomposition site = decomposition_for(NoiseFamily::depolarizing, 0.05);
  const std::vector<PecDecomposition> sites{site, site, site};
  EXPECT_NEAR(gamma_total(sites), std::pow(site.gamma, 3), 1e-14);
}

TEST(ExactMitigated, BranchCapEnforced) {
  const std::vector<PecDecomposition> sites(7, decomposition_for(NoiseFamily::depolarizing, 0.1));
  EXPECT_GT(branch_count(sites), kBranchEnumerationCap);
  EXPECT_THROW(
      exact_mitigated_expectation(sites, [](std::span<const int>) { return 0.0; }),
      std::length_error);
}

TEST(SampleBranches, SingleTermSitesAreDeterministic) {
  PecDecomposition trivial;
  trivial.terms = {{1.0, PecOperation::identity}};
  trivial.gamma = 1.0;
  const std::vector<PecDecomposition> sites{trivial, trivial};
  Rng rng(32);
  for (const auto& sample : sample_branches(sites, 10, rng)) {
    EXPECT_EQ(sample.sign, 1);
    EXPECT_EQ(sample.term_indices, (std::vector<int>{0, 0}));
    EXPECT_NEAR(sample.weight, 1.0, 1e-15);
  }
}

TEST(SampleBranches, FrequenciesMatchWithinThreeSigma) {
  const std::vector<PecDecomposition> sites{decomposition_for(NoiseFamily::dephasing, 0.1)};
  const long n = 100000;
  Rng rng(33);
  long count_z = 0;
  for (const auto& sample : sample_branches(sites, n, rng))
    if (sample.term_indices[0] == 1) ++count_z;
  const double expected = std::abs(sites[0].terms[1].alpha) / sites[0].gamma;  // 0.1
  const double sigma = std::sqrt(expected * (1.0 - expected) / n);
  EXPECT_NEAR(static_cast<double>(count_z) / n, expected, 3.0 * sigma);
}

TEST(SampleBranches, MonteCarloMeanConvergesToExactSum) {
  Rng rng(34);
  const DensityMatrix rho = testing::random_density(rng, 1);
  const QuantumChannel noise = make_channel(NoiseFamily::depolarizing, 0.1, 1);
  const std::vector<PecDecomposition> sites{decomposition_for(NoiseFamily::depolarizing, 0.1)};
  const auto evaluate = [&](std::span<const int> branch) {
    ComplexMatrix state =
        apply_channel(pec_operation_channel(sites[0].terms[branch[0]].op), rho.matrix(), {0}, 1);
    return expectation(pauli('X'), noise.apply_full(state));
  };
  const auto exact = exact_mitigated_expectation(sites, evaluate);

  const long n = 200000;
  double mean = 0.0, sq = 0.0;
  for (const auto& sample : sample_branches(sites, n, rng)) {
    const double v = sample.sign * sample.weight * evaluate(sample.term_indices);
    mean += v;
    sq += v * v;
  }
  mean /= n;
  const double se = std::sqrt((sq / n - mean * mean) / n);
  EXPECT_NEAR(mean, exact.value, 5.0 * std::max(se, 1e-6));
}

TEST(SampleBranches, UnbiasednessIdentityOverLattice) {
  // Σ_b p_b sign_b γ v_b equals Σ_b α_b v_b algebraically.
  const std::vector<PecDecomposition> sites{
      decomposition_for(NoiseFamily::amplitude_damping, 0.1),
      decomposition_for(NoiseFamily::dephasing, 0.2)};
  Rng rng(35);
  std::vector<double> values;
  double alpha_sum = 0.0, reweighted = 0.0;
  const double gamma = gamma_total(sites);
  for_each_branch(sites, [&](std::span<const int> branch, double alpha) {
    const double v = 2.0 * rng.uniform() - 1.0;
    alpha_sum += alpha * v;
    double prob = 1.0;
    int sign = 1;
    for (std::size_t k = 0; k < sites.size(); ++k) {
      const auto& term = sites[k].terms[branch[k]];
      prob *= std::abs(term.alpha) / sites[k].gamma;
      if (term.alpha < 0) sign = -sign;
    }
    reweighted += prob * sign * gamma * v;
  });
  EXPECT_NEAR(alpha_sum, reweighted, 1e-12);
}

TEST(ControlNoiseCosts, IgnoreVersusMitigateInequalities) {
  for (double p = 0.01; p < 0.4; p += 0.01) {
    const double dep_ignore = std::pow(1.0 - p, -2.0);
    const double dep_gamma2 = std::pow(closed_form_gamma(NoiseFamily::depolarizing, p), 2);
    EXPECT_LT(dep_ignore, dep_gamma2);
    const double ad_ignore = 1.0 / (1.0 - p);
    const double ad_gamma2 = std::pow(closed_form_gamma(NoiseFamily::amplitude_damping, p), 2);
    EXPECT_LT(ad_ignore, ad_gamma2);
    const double deph_ignore = std::pow(1.0 - 2.0 * p, -2.0);
    const double deph_gamma2 = std::pow(closed_form_gamma(NoiseFamily::dephasing, p), 2);
    EXPECT_NEAR(deph_ignore, deph_gamma2, 1e-12 * deph_gamma2);
  }
}

TEST(PecOperations, ResetChannelPreparesZero) {
  Rng rng(36);
  const DensityMatrix rho = testing::random_density(rng, 1);
  const ComplexMatrix out = pec_operation_channel(PecOperation::reset_zero).apply_full(rho.matrix());
  EXPECT_LT(max_abs_diff(out, pure_state(ket(0, 2)).matrix()), 1e-13);
}

}  // namespace
}  // namespace vpurify
