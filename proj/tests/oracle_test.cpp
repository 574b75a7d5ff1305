// Copyright 2026 The rrldp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "rrldp/oracle.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "rrldp/analytics.hpp"
#include "test_util.hpp"

namespace rrldp {
namespace {

using rrldp_test::NearlyEqual;

TEST(ExactOracle, WarnerSmallInstance) {
  const MechanismSpec spec = MechanismSpec::Warner(WarnerParams(0.25));
  const Population pop = Population::FromProportion(4, 0.25);
  const ExactResult result = ExactOracle(spec, pop);
  EXPECT_NEAR(result.mean, 0.25, 1e-12);
  // p(1-p) / (N (2p-1)^2) = 0.1875 / (4 * 0.25).
  EXPECT_NEAR(result.variance, 0.1875, 1e-12);
  EXPECT_EQ(result.outcomes_enumerated, 16u);
}

TEST(ExactOracle, ImprovedChristofidesHypergeometric) {
  // Deck (1, 1, 2) from (0.25, 0.25, 0.5) at N = 4, one sensitive member.
  const MechanismSpec spec =
      MechanismSpec::ImprovedChristofides(CardDistribution({0.25, 0.25, 0.5}));
  const Population pop = Population::FromProportion(4, 0.25);
  const ExactResult result = ExactOracle(spec, pop);
  EXPECT_NEAR(result.mean, 0.25, 1e-12);
  const double expected = ImprovedChristofidesVariance(
      CardDistribution({0.25, 0.25, 0.5}), 4, 0.25);
  EXPECT_NEAR(expected, 0.6875, 1e-12);
  EXPECT_NEAR(result.variance, expected, 1e-12);
}

TEST(ExactOracle, DegenerateProportionHasZeroImprovedVariance) {
  const Population all_clear = Population::FromProportion(4, 0.0);
  const MechanismSpec ic =
      MechanismSpec::ImprovedChristofides(CardDistribution({0.25, 0.25, 0.5}));
  const ExactResult ic_result = ExactOracle(ic, all_clear);
  EXPECT_NEAR(ic_result.mean, 0.0, 1e-12);
  EXPECT_NEAR(ic_result.variance, 0.0, 1e-12);

  const MechanismSpec warner = MechanismSpec::Warner(WarnerParams(0.25));
  EXPECT_GT(ExactOracle(warner, all_clear).variance, 1e-3);
}

TEST(ExactOracle, RejectsLargeInstances) {
  const MechanismSpec spec = MechanismSpec::Warner(WarnerParams(0.25));
  const Population pop = Population::FromProportion(9, 1.0 / 3.0);
  EXPECT_THROW(ExactOracle(spec, pop), InstanceTooLarge);
  EXPECT_NO_THROW(ExactOracle(spec, pop, 9));
}

TEST(ExactOracle, RejectsNonIntegralDecks) {
  const MechanismSpec spec =
      MechanismSpec::ImprovedChristofides(CardDistribution({0.2, 0.5, 0.3}));
  const Population pop = Population::FromProportion(4, 0.25);
  EXPECT_THROW(ExactOracle(spec, pop), InvalidParameter);
}

// Enumerated law of the Warner mechanism equals the enumerated law of the
// two-card mechanism with proportions (p, 1-p), for every small population.
TEST(ExactOracle, WarnerEqualsTwoCardChristofides) {
  const double p = 0.3;
  const MechanismSpec warner = MechanismSpec::Warner(WarnerParams(p));
  const MechanismSpec cards =
      MechanismSpec::Christofides(CardDistribution({p, 1.0 - p}));
  for (std::int64_t n = 2; n <= 5; ++n) {
    for (std::int64_t ones = 0; ones <= n; ++ones) {
      const Population pop = Population::FromProportion(
          n, static_cast<double>(ones) / static_cast<double>(n));
      const ExactResult via_warner = ExactOracle(warner, pop);
      const ExactResult via_cards = ExactOracle(cards, pop);
      ASSERT_NEAR(via_warner.mean, via_cards.mean, 1e-12);
      ASSERT_NEAR(via_warner.variance, via_cards.variance, 1e-12);
    }
  }
}

// A compact version of the full battery (the acceptance suite runs N up to
// 6): enumeration must reproduce the closed forms exactly.
TEST(ExactOracle, MatchesClosedFormsOnSmallBattery) {
  for (std::int64_t n : {2, 3, 4}) {
    for (std::int64_t ones = 0; ones <= n; ++ones) {
      const double pi_a = static_cast<double>(ones) / static_cast<double>(n);
      const Population pop = Population::FromProportion(n, pi_a);

      const MechanismSpec warner = MechanismSpec::Warner(WarnerParams(0.3));
      const ExactResult w = ExactOracle(warner, pop);
      ASSERT_NEAR(w.mean, pi_a, 1e-12);
      ASSERT_TRUE(
          NearlyEqual(w.variance, TheoreticalVariance(warner, n, pi_a), 1e-12));

      const MechanismSpec simmons =
          MechanismSpec::Simmons(SimmonsParams(0.6, 0.4));
      const ExactResult s = ExactOracle(simmons, pop);
      ASSERT_NEAR(s.mean, pi_a, 1e-12);
      ASSERT_TRUE(NearlyEqual(s.variance,
                              TheoreticalVariance(simmons, n, pi_a), 1e-12));

      const MechanismSpec mc =
          MechanismSpec::Christofides(CardDistribution({0.2, 0.5, 0.3}));
      const ExactResult c = ExactOracle(mc, pop);
      ASSERT_NEAR(c.mean, pi_a, 1e-12);
      ASSERT_TRUE(
          NearlyEqual(c.variance, TheoreticalVariance(mc, n, pi_a), 1e-12));
    }
  }
}

// Sampling respondents with replacement costs exactly pi_a(1-pi_a)/N more
// variance than the whole-population survey.
TEST(ExactOracleWithReplacement, PenaltyIsExact) {
  const std::vector<MechanismSpec> specs = {
      MechanismSpec::Warner(WarnerParams(0.25)),
      MechanismSpec::Simmons(SimmonsParams(0.5, 0.3)),
      MechanismSpec::Christofides(CardDistribution({0.2, 0.5, 0.3})),
  };
  for (const auto& spec : specs) {
    for (std::int64_t n : {2, 3, 4, 5}) {
      for (std::int64_t ones = 0; ones <= n; ++ones) {
        const double pi_a = static_cast<double>(ones) / static_cast<double>(n);
        const Population pop = Population::FromProportion(n, pi_a);
        const ExactResult classic = ExactOracleWithReplacement(spec, pop);
        const ExactResult modified = ExactOracle(spec, pop);
        const double penalty = pi_a * (1.0 - pi_a) / static_cast<double>(n);
        ASSERT_NEAR(classic.variance - modified.variance, penalty, 1e-12)
            << spec.name() << " n=" << n << " pi_a=" << pi_a;
        // And the closed-form counterpart agrees too.
        ASSERT_TRUE(NearlyEqual(classic.variance,
                                WithReplacementVariance(spec, n, pi_a),
                                1e-12));
      }
    }
  }
}

TEST(ExactOracleWithReplacement, ImprovedChristofidesUnsupported) {
  const MechanismSpec ic =
      MechanismSpec::ImprovedChristofides(CardDistribution({0.25, 0.25, 0.5}));
  const Population pop = Population::FromProportion(4, 0.25);
  EXPECT_THROW(ExactOracleWithReplacement(ic, pop), Unsupported);
}

}  // namespace
}  // namespace rrldp
