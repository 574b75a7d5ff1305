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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "rrldp/card_distribution.hpp"
#include "rrldp/errors.hpp"
#include "rrldp/random.hpp"

namespace rrldp {

// A physical deck of cards: integer counts per card value, consumed by
// without-replacement draws. The realized proportions counts/N, not the
// nominal ones, are what estimation and budget analysis must use for a
// concrete deck.
class Deck {
 public:
  // Apportions num_cards across card values by largest remainder (floors
  // first, then one extra card per largest fractional part, ties to the
  // lower value). Throws RealizedDistributionInvalid when the rounded counts
  // no longer form a valid card distribution.
  static Deck Build(std::int64_t num_cards, const CardDistribution& dist) {
    if (num_cards < 2) {
      throw InvalidParameter("deck needs at least 2 cards, got " +
                             std::to_string(num_cards));
    }
    const auto& p = dist.proportions();
    std::vector<std::int64_t> counts(p.size(), 0);
    std::vector<std::pair<double, std::size_t>> remainders;
    remainders.reserve(p.size());
    std::int64_t assigned = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double exact = static_cast<double>(num_cards) * p[k];
      counts[k] = static_cast<std::int64_t>(std::floor(exact));
      assigned += counts[k];
      remainders.emplace_back(exact - std::floor(exact), k);
    }
    // Largest remainder first; ties broken by lower card value.
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) {
                       if (a.first != b.first) return a.first > b.first;
                       return a.second < b.second;
                     });
    const std::int64_t leftover = num_cards - assigned;
    for (std::int64_t i = 0; i < leftover; ++i) {
      ++counts[remainders[static_cast<std::size_t>(i)].second];
    }
    Deck deck(std::move(counts));
    if (deck.remaining() != num_cards) {
      throw Error("largest-remainder apportionment lost cards");
    }
    deck.RealizedDistribution();  // rounding must yield a usable deck
    return deck;
  }

  // A deck with explicit counts. Degenerate compositions (a single card, one
  // value only) are allowed here; they can still be drawn from, but
  // RealizedDistribution() will reject them if estimation is attempted.
  static Deck FromCounts(std::vector<std::int64_t> counts) {
    return Deck(std::move(counts));
  }

  int NumValues() const { return static_cast<int>(counts_.size()); }
  std::int64_t remaining() const { return remaining_; }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  const std::vector<std::int64_t>& initial_counts() const {
    return initial_counts_;
  }

  // Proportions at construction time; drives estimation and budgets. Throws
  // RealizedDistributionInvalid when the composition cannot back the
  // estimator.
  CardDistribution RealizedDistribution() const {
    return CardDistribution::FromCounts(initial_counts_);
  }

  // Draws one card uniformly among the remaining ones and removes it.
  template <UniformSource R>
  int Draw(R& rng) {
    if (remaining_ == 0) throw DeckExhausted("no cards left in the deck");
    auto idx = static_cast<std::int64_t>(
        rng.NextIndex(static_cast<std::size_t>(remaining_)));
    for (std::size_t k = 0; k < counts_.size(); ++k) {
      if (idx < counts_[k]) {
        --counts_[k];
        --remaining_;
        return static_cast<int>(k + 1);
      }
      idx -= counts_[k];
    }
    throw Error("deck counts are inconsistent with remaining()");
  }

 private:
  explicit Deck(std::vector<std::int64_t> counts)
      : counts_(std::move(counts)),
        initial_counts_(counts_),
        remaining_(0) {
    for (std::int64_t c : counts_) {
      if (c < 0) throw InvalidParameter("deck counts must be nonnegative");
      remaining_ += c;
    }
  }

  std::vector<std::int64_t> counts_;
  std::vector<std::int64_t> initial_counts_;
  std::int64_t remaining_;
};

}  // namespace rrldp
