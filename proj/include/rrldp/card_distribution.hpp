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

#include "rrldp/errors.hpp"

namespace rrldp {

// Law of the card value Y: integers 1..L with proportions p_1..p_L.
//
// Construction rejects distributions that break the estimator:
//   - proportions must be nonnegative and sum to 1 (within 1e-12),
//   - Y must not be a point mass (Var Y > 0),
//   - L+1-2E[Y] must be nonzero (uniform proportions are the canonical
//     offender; any symmetric distribution hits this too).
class CardDistribution {
 public:
  explicit CardDistribution(std::vector<double> proportions)
      : p_(std::move(proportions)) {
    Validate(p_, /*realized=*/false);
    ComputeMoments();
  }

  int NumValues() const { return static_cast<int>(p_.size()); }  // L
  const std::vector<double>& proportions() const { return p_; }

  double MeanY() const { return mean_; }
  double VarY() const { return var_; }

  // Estimator denominator L+1-2E[Y].
  double Denominator() const {
    return static_cast<double>(p_.size() + 1) - 2.0 * mean_;
  }

  // Builds the distribution realized by integer card counts. Throws
  // RealizedDistributionInvalid instead of InvalidDistribution so callers can
  // tell a bad rounding outcome from a bad input.
  static CardDistribution FromCounts(const std::vector<std::int64_t>& counts) {
    std::int64_t total = 0;
    for (std::int64_t c : counts) total += c;
    std::vector<double> p(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) {
      p[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
    }
    try {
      Validate(p, /*realized=*/true);
    } catch (const InvalidDistribution& e) {
      throw RealizedDistributionInvalid(e.what());
    }
    return CardDistribution(std::move(p), 0);
  }

 private:
  CardDistribution(std::vector<double> proportions, int /*unchecked*/)
      : p_(std::move(proportions)) {
    ComputeMoments();
  }

  static void Validate(const std::vector<double>& p, bool realized) {
    const char* what = realized ? "realized card distribution"
                                : "card distribution";
    if (p.size() < 2) {
      throw InvalidDistribution(std::string(what) + " needs L >= 2 values");
    }
    double sum = 0.0;
    for (double v : p) {
      if (v < 0.0 || !std::isfinite(v)) {
        throw InvalidDistribution(std::string(what) +
                                  " has a negative or non-finite proportion");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw InvalidDistribution(std::string(what) + " proportions sum to " +
                                std::to_string(sum) + ", expected 1");
    }
    double mean = 0.0, mean_sq = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double v = static_cast<double>(k + 1);
      mean += v * p[k];
      mean_sq += v * v * p[k];
    }
    const double var = mean_sq - mean * mean;
    if (var <= 1e-15) {
      throw InvalidDistribution(std::string(what) +
                                " is degenerate (card value has no variance)");
    }
    const double denom = static_cast<double>(p.size() + 1) - 2.0 * mean;
    if (std::abs(denom) <= 1e-12) {
      throw InvalidDistribution(
          std::string(what) +
          " makes the estimator denominator L+1-2E[Y] vanish");
    }
  }

  void ComputeMoments() {
    mean_ = 0.0;
    double mean_sq = 0.0;
    for (std::size_t k = 0; k < p_.size(); ++k) {
      const double v = static_cast<double>(k + 1);
      mean_ += v * p_[k];
      mean_sq += v * v * p_[k];
    }
    var_ = mean_sq - mean_ * mean_;
  }

  std::vector<double> p_;
  double mean_ = 0.0;
  double var_ = 0.0;
};

}  // namespace rrldp
