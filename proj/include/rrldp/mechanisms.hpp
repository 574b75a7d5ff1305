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

#include <cassert>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rrldp/card_distribution.hpp"
#include "rrldp/deck.hpp"
#include "rrldp/errors.hpp"
#include "rrldp/population.hpp"
#include "rrldp/random.hpp"

namespace rrldp {

// Probability of answering the direct statement truthfully. The estimator is
// singular at p = 1/2, and p > 1/2 is the mirrored design, so construction
// pins p to (0, 1/2).
class WarnerParams {
 public:
  explicit WarnerParams(double p) : p_(p) {
    if (!(p > 0.0 && p < 0.5)) {
      throw InvalidParameter("warner p must lie in (0, 1/2), got " +
                             std::to_string(p));
    }
  }
  double p() const { return p_; }

 private:
  double p_;
};

// p: probability of answering the sensitive statement; pi_b: probability the
// unrelated statement is true. pi_b in {0,1} makes the unrelated branch
// deterministic and the budget unbounded, so both ends are open.
class SimmonsParams {
 public:
  SimmonsParams(double p, double pi_b) : p_(p), pi_b_(pi_b) {
    if (!(p > 0.0 && p < 1.0)) {
      throw InvalidParameter("simmons p must lie in (0, 1), got " +
                             std::to_string(p));
    }
    if (!(pi_b > 0.0 && pi_b < 1.0)) {
      throw InvalidParameter("simmons pi_b must lie in (0, 1), got " +
                             std::to_string(pi_b));
    }
  }
  double p() const { return p_; }
  double pi_b() const { return pi_b_; }

 private:
  double p_;
  double pi_b_;
};

enum class MechanismKind {
  kWarner,
  kSimmons,
  kChristofides,
  kImprovedChristofides,
};

inline std::string_view MechanismName(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kWarner:
      return "warner";
    case MechanismKind::kSimmons:
      return "simmons";
    case MechanismKind::kChristofides:
      return "christofides";
    case MechanismKind::kImprovedChristofides:
      return "improved-christofides";
  }
  return "unknown";
}

inline MechanismKind MechanismKindFromName(std::string_view name) {
  if (name == "warner") return MechanismKind::kWarner;
  if (name == "simmons") return MechanismKind::kSimmons;
  if (name == "christofides") return MechanismKind::kChristofides;
  if (name == "improved-christofides") {
    return MechanismKind::kImprovedChristofides;
  }
  throw InvalidParameter("unknown mechanism \"" + std::string(name) + "\"");
}

// Tagged union over the four mechanisms' parameters. The Christofides family
// carries the nominal card distribution; a concrete improved-Christofides
// survey realizes it as an N-card deck.
class MechanismSpec {
 public:
  static MechanismSpec Warner(WarnerParams params) {
    return MechanismSpec(MechanismKind::kWarner, std::move(params));
  }
  static MechanismSpec Simmons(SimmonsParams params) {
    return MechanismSpec(MechanismKind::kSimmons, std::move(params));
  }
  static MechanismSpec Christofides(CardDistribution dist) {
    return MechanismSpec(MechanismKind::kChristofides, std::move(dist));
  }
  static MechanismSpec ImprovedChristofides(CardDistribution dist) {
    return MechanismSpec(MechanismKind::kImprovedChristofides,
                         std::move(dist));
  }

  MechanismKind kind() const { return kind_; }
  std::string_view name() const { return MechanismName(kind_); }

  const WarnerParams& warner() const {
    Expect(MechanismKind::kWarner);
    return std::get<WarnerParams>(params_);
  }
  const SimmonsParams& simmons() const {
    Expect(MechanismKind::kSimmons);
    return std::get<SimmonsParams>(params_);
  }
  const CardDistribution& distribution() const {
    if (kind_ != MechanismKind::kChristofides &&
        kind_ != MechanismKind::kImprovedChristofides) {
      throw InvalidParameter("mechanism has no card distribution");
    }
    return std::get<CardDistribution>(params_);
  }

 private:
  template <typename P>
  MechanismSpec(MechanismKind kind, P params)
      : kind_(kind), params_(std::move(params)) {}

  void Expect(MechanismKind kind) const {
    if (kind_ != kind) {
      throw InvalidParameter("mechanism spec holds " + std::string(name()) +
                             ", not " + std::string(MechanismName(kind)));
    }
  }

  MechanismKind kind_;
  std::variant<WarnerParams, SimmonsParams, CardDistribution> params_;
};

// Answer the direct statement with probability p, its complement otherwise.
// Consumes exactly one uniform variate.
template <UniformSource R>
int WarnerPerturb(int x, const WarnerParams& params, R& rng) {
  assert(x == 0 || x == 1);
  const bool truthful = rng.NextUnit() < params.p();
  return truthful ? x : 1 - x;
}

// Answer the sensitive statement with probability p, otherwise answer an
// unrelated Bernoulli(pi_b) statement. Always consumes two uniform variates
// so the stream position does not depend on the branch taken.
template <UniformSource R>
int SimmonsPerturb(int x, const SimmonsParams& params, R& rng) {
  assert(x == 0 || x == 1);
  const double u = rng.NextUnit();
  const double v = rng.NextUnit();
  if (u < params.p()) return x;
  return v < params.pi_b() ? 1 : 0;
}

// Draw k from the card distribution (with replacement); report k when the
// respondent is not sensitive and L+1-k when they are:
//   X = (L+1-Y)x + Y(1-x).
// Consumes exactly one uniform variate.
template <UniformSource R>
int ChristofidesPerturb(int x, const CardDistribution& dist, R& rng) {
  assert(x == 0 || x == 1);
  const double u = rng.NextUnit();
  const auto& p = dist.proportions();
  int k = dist.NumValues();
  double cumulative = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    cumulative += p[i];
    if (u < cumulative) {
      k = static_cast<int>(i + 1);
      break;
    }
  }
  return x == 1 ? dist.NumValues() + 1 - k : k;
}

// Same report mapping, but the card comes off a finite deck and is kept.
// Consumes exactly one uniform variate; mutates the deck.
template <UniformSource R>
int ImprovedChristofidesPerturb(int x, Deck& deck, R& rng) {
  assert(x == 0 || x == 1);
  const int k = deck.Draw(rng);
  return x == 1 ? deck.NumValues() + 1 - k : k;
}

// Runs the improved-Christofides protocol over the whole population against
// an explicit deck. One response per respondent, in respondent order.
template <UniformSource R>
std::vector<int> RunSurveyWithDeck(const Population& pop, Deck& deck, R& rng) {
  std::vector<int> responses;
  responses.reserve(static_cast<std::size_t>(pop.Size()));
  for (std::uint8_t x : pop.bits()) {
    responses.push_back(ImprovedChristofidesPerturb(x, deck, rng));
  }
  return responses;
}

// Surveys every respondent with the given mechanism. For improved
// Christofides a deck with exactly one card per respondent is built from the
// nominal distribution and fully consumed.
template <UniformSource R>
std::vector<int> RunSurvey(const Population& pop, const MechanismSpec& spec,
                           R& rng) {
  std::vector<int> responses;
  responses.reserve(static_cast<std::size_t>(pop.Size()));
  switch (spec.kind()) {
    case MechanismKind::kWarner: {
      const WarnerParams& params = spec.warner();
      for (std::uint8_t x : pop.bits()) {
        responses.push_back(WarnerPerturb(x, params, rng));
      }
      break;
    }
    case MechanismKind::kSimmons: {
      const SimmonsParams& params = spec.simmons();
      for (std::uint8_t x : pop.bits()) {
        responses.push_back(SimmonsPerturb(x, params, rng));
      }
      break;
    }
    case MechanismKind::kChristofides: {
      const CardDistribution& dist = spec.distribution();
      for (std::uint8_t x : pop.bits()) {
        responses.push_back(ChristofidesPerturb(x, dist, rng));
      }
      break;
    }
    case MechanismKind::kImprovedChristofides: {
      Deck deck = Deck::Build(pop.Size(), spec.distribution());
      return RunSurveyWithDeck(pop, deck, rng);
    }
  }
  return responses;
}

}  // namespace rrldp
