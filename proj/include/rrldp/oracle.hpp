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
#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "rrldp/analytics.hpp"
#include "rrldp/deck.hpp"
#include "rrldp/errors.hpp"
#include "rrldp/mechanisms.hpp"
#include "rrldp/population.hpp"

namespace rrldp {

// Exact law of the estimator on a small instance, computed by enumerating
// every outcome with its probability. This is the independent check for the
// closed-form variances; it never calls the sampling code paths.
struct ExactResult {
  double mean = 0.0;
  double variance = 0.0;
  std::uint64_t outcomes_enumerated = 0;
};

namespace internal {

// Every estimator here is affine in the response sum: (sum/n - offset)/denom.
struct AffineEstimator {
  double n;
  double offset;
  double denom;
  double operator()(double sum) const { return (sum / n - offset) / denom; }
};

struct Outcome {
  int value;    // contribution to the response sum
  double prob;  // probability of this branch for the respondent/draw
};

struct MomentAccumulator {
  long double m1 = 0.0L;
  long double m2 = 0.0L;
  std::uint64_t leaves = 0;

  void Add(long double prob, double estimate) {
    m1 += prob * estimate;
    m2 += prob * static_cast<long double>(estimate) * estimate;
    ++leaves;
  }

  ExactResult Finish() const {
    ExactResult result;
    result.mean = static_cast<double>(m1);
    result.variance = static_cast<double>(m2 - m1 * m1);
    result.outcomes_enumerated = leaves;
    return result;
  }
};

inline void EnumerateProduct(const std::vector<std::vector<Outcome>>& lists,
                             std::size_t i, long double prob, int sum,
                             const AffineEstimator& estimator,
                             MomentAccumulator& acc) {
  if (i == lists.size()) {
    acc.Add(prob, estimator(static_cast<double>(sum)));
    return;
  }
  for (const Outcome& o : lists[i]) {
    if (o.prob <= 0.0) continue;
    EnumerateProduct(lists, i + 1, prob * o.prob, sum + o.value, estimator,
                     acc);
  }
}

inline double Choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (std::int64_t i = 1; i <= k; ++i) {
    result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return result;
}

// Walks every allocation (a_1..a_L) of the deck counts to the sensitive
// group, weighted by the multivariate hypergeometric law. Only the multiset
// of card values landing in the sensitive group matters to the estimator.
inline void EnumerateAllocations(const std::vector<std::int64_t>& counts,
                                 std::size_t k, std::int64_t left,
                                 double weight, std::int64_t value_sum,
                                 double total_ways, std::int64_t total_value,
                                 std::int64_t n_a,
                                 const AffineEstimator& estimator,
                                 int num_values, MomentAccumulator& acc) {
  if (k == counts.size()) {
    if (left != 0) return;
    // sum X = N_A (L+1) + T - 2 S_A where S_A is the sensitive-group card sum.
    const std::int64_t sum =
        n_a * static_cast<std::int64_t>(num_values + 1) + total_value -
        2 * value_sum;
    acc.Add(static_cast<long double>(weight / total_ways),
            estimator(static_cast<double>(sum)));
    return;
  }
  const std::int64_t cap = std::min(counts[k], left);
  for (std::int64_t a = 0; a <= cap; ++a) {
    EnumerateAllocations(counts, k + 1, left - a,
                         weight * Choose(counts[k], a),
                         value_sum + a * static_cast<std::int64_t>(k + 1),
                         total_ways, total_value, n_a, estimator, num_values,
                         acc);
  }
}

inline std::vector<Outcome> RespondentOutcomes(const MechanismSpec& spec,
                                               int x) {
  switch (spec.kind()) {
    case MechanismKind::kWarner: {
      const double p = spec.warner().p();
      return {{x, p}, {1 - x, 1.0 - p}};
    }
    case MechanismKind::kSimmons: {
      // Collapsed to three effective branches: truth, unrelated-yes,
      // unrelated-no.
      const double p = spec.simmons().p();
      const double b = spec.simmons().pi_b();
      return {{x, p}, {1, (1.0 - p) * b}, {0, (1.0 - p) * (1.0 - b)}};
    }
    case MechanismKind::kChristofides: {
      const auto& dist = spec.distribution();
      const int l = dist.NumValues();
      std::vector<Outcome> outcomes;
      outcomes.reserve(static_cast<std::size_t>(l));
      for (int k = 1; k <= l; ++k) {
        outcomes.push_back({x == 1 ? l + 1 - k : k,
                            dist.proportions()[static_cast<std::size_t>(k - 1)]});
      }
      return outcomes;
    }
    case MechanismKind::kImprovedChristofides:
      break;  // handled by the allocation walk
  }
  throw InvalidParameter("unhandled mechanism kind");
}

inline AffineEstimator EstimatorFor(const MechanismSpec& spec,
                                    std::int64_t n) {
  switch (spec.kind()) {
    case MechanismKind::kWarner: {
      const double p = spec.warner().p();
      return {static_cast<double>(n), 1.0 - p, 2.0 * p - 1.0};
    }
    case MechanismKind::kSimmons: {
      const double p = spec.simmons().p();
      return {static_cast<double>(n), (1.0 - p) * spec.simmons().pi_b(), p};
    }
    case MechanismKind::kChristofides:
    case MechanismKind::kImprovedChristofides: {
      const auto& dist = spec.distribution();
      return {static_cast<double>(n), dist.MeanY(), dist.Denominator()};
    }
  }
  throw InvalidParameter("unhandled mechanism kind");
}

inline void CheckOracleSize(std::int64_t n, int max_n) {
  if (n > max_n) {
    throw InstanceTooLarge("exact enumeration capped at N = " +
                           std::to_string(max_n) + ", got N = " +
                           std::to_string(n));
  }
}

}  // namespace internal

// Exact mean and variance of the estimator for whole-population surveying.
// Warner/Simmons/Christofides enumerate per-respondent branch combinations
// under the product measure; improved Christofides enumerates card-to-group
// allocations under the multivariate hypergeometric law and requires the
// deck counts N * p_k to be integral (otherwise the realized deck would not
// match the distribution the estimator uses).
inline ExactResult ExactOracle(const MechanismSpec& spec,
                               const Population& pop, int max_n = 8) {
  const std::int64_t n = pop.Size();
  internal::CheckOracleSize(n, max_n);
  internal::MomentAccumulator acc;

  if (spec.kind() == MechanismKind::kImprovedChristofides) {
    const auto& dist = spec.distribution();
    const auto& p = dist.proportions();
    std::vector<std::int64_t> counts(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double exact = static_cast<double>(n) * p[k];
      counts[k] = static_cast<std::int64_t>(std::llround(exact));
      if (std::abs(exact - static_cast<double>(counts[k])) > 1e-9) {
        throw InvalidParameter(
            "exact enumeration needs integral deck counts; N * p_" +
            std::to_string(k + 1) + " = " + std::to_string(exact));
      }
    }
    std::int64_t total_value = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      total_value += counts[k] * static_cast<std::int64_t>(k + 1);
    }
    const std::int64_t n_a = pop.SensitiveCount();
    const double total_ways = internal::Choose(n, n_a);
    internal::EnumerateAllocations(counts, 0, n_a, 1.0, 0, total_ways,
                                   total_value, n_a,
                                   internal::EstimatorFor(spec, n),
                                   dist.NumValues(), acc);
    return acc.Finish();
  }

  std::vector<std::vector<internal::Outcome>> lists;
  lists.reserve(static_cast<std::size_t>(n));
  for (std::uint8_t x : pop.bits()) {
    lists.push_back(internal::RespondentOutcomes(spec, x));
  }
  internal::EnumerateProduct(lists, 0, 1.0L, 0,
                             internal::EstimatorFor(spec, n), acc);
  return acc.Finish();
}

// Exact law of the classical with-replacement counterparts: N independent
// draws of a random respondent followed by the perturbation. Exists only for
// the comparison against the modified mechanisms.
inline ExactResult ExactOracleWithReplacement(const MechanismSpec& spec,
                                              const Population& pop,
                                              int max_n = 8) {
  const std::int64_t n = pop.Size();
  internal::CheckOracleSize(n, max_n);
  const double pi = pop.TrueProportion();

  std::vector<internal::Outcome> per_draw;
  switch (spec.kind()) {
    case MechanismKind::kWarner: {
      const double p = spec.warner().p();
      const double yes = p * pi + (1.0 - p) * (1.0 - pi);
      per_draw = {{1, yes}, {0, 1.0 - yes}};
      break;
    }
    case MechanismKind::kSimmons: {
      const double p = spec.simmons().p();
      const double yes = p * pi + (1.0 - p) * spec.simmons().pi_b();
      per_draw = {{1, yes}, {0, 1.0 - yes}};
      break;
    }
    case MechanismKind::kChristofides: {
      const auto& dist = spec.distribution();
      const auto& p = dist.proportions();
      const int l = dist.NumValues();
      for (int m = 1; m <= l; ++m) {
        const double prob =
            pi * p[static_cast<std::size_t>(l - m)] +
            (1.0 - pi) * p[static_cast<std::size_t>(m - 1)];
        per_draw.push_back({m, prob});
      }
      break;
    }
    case MechanismKind::kImprovedChristofides:
      throw Unsupported(
          "improved christofides has no with-replacement counterpart");
  }

  std::vector<std::vector<internal::Outcome>> lists(
      static_cast<std::size_t>(n), per_draw);
  internal::MomentAccumulator acc;
  internal::EnumerateProduct(lists, 0, 1.0L, 0,
                             internal::EstimatorFor(spec, n), acc);
  return acc.Finish();
}

}  // namespace rrldp
