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
#include <numeric>
#include <string>
#include <vector>

#include "rrldp/errors.hpp"

namespace rrldp {

// The full respondent vector: one sensitive bit per respondent. A survey
// always covers the whole population (a without-replacement sample of size N
// from N respondents), so the true proportion is a fixed constant of the
// instance, not a sampling parameter.
class Population {
 public:
  explicit Population(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    if (bits_.size() < 2) {
      throw InvalidParameter("population needs at least 2 respondents, got " +
                             std::to_string(bits_.size()));
    }
    for (std::uint8_t b : bits_) {
      if (b > 1) throw InvalidParameter("population bits must be 0 or 1");
    }
  }

  // Builds a population of size n with exactly n*pi_a sensitive members
  // (leading block of ones). n*pi_a must be integral up to rounding noise.
  static Population FromProportion(std::int64_t n, double pi_a) {
    if (n < 2) throw InvalidParameter("population size must be >= 2");
    if (pi_a < 0.0 || pi_a > 1.0) {
      throw InvalidParameter("pi_a must lie in [0, 1]");
    }
    const double ones_real = static_cast<double>(n) * pi_a;
    const auto ones = static_cast<std::int64_t>(std::llround(ones_real));
    if (std::abs(ones_real - static_cast<double>(ones)) > 1e-6) {
      throw InvalidParameter("n * pi_a = " + std::to_string(ones_real) +
                             " is not an integer count of respondents");
    }
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
    for (std::int64_t i = 0; i < ones; ++i) bits[static_cast<std::size_t>(i)] = 1;
    return Population(std::move(bits));
  }

  std::int64_t Size() const { return static_cast<std::int64_t>(bits_.size()); }

  std::int64_t SensitiveCount() const {
    return std::accumulate(bits_.begin(), bits_.end(), std::int64_t{0});
  }

  double TrueProportion() const {
    return static_cast<double>(SensitiveCount()) /
           static_cast<double>(bits_.size());
  }

  const std::vector<std::uint8_t>& bits() const { return bits_; }

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace rrldp
