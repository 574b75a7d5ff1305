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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rrldp {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A constructor argument violates the type's invariants.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// A card-value distribution is degenerate (single value), non-normalized, or
// makes the estimator denominator L+1-2E[Y] vanish.
class InvalidDistribution : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

// Rounding a distribution onto a finite deck produced counts that violate
// the distribution invariants.
class RealizedDistributionInvalid : public InvalidDistribution {
 public:
  using InvalidDistribution::InvalidDistribution;
};

// Auxiliary design parameter out of range (pi_B in {0,1}, p2 >= 1).
class InvalidAux : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

// A draw was requested from a deck with no cards left.
class DeckExhausted : public Error {
 public:
  using Error::Error;
};

// A likelihood ratio has a zero denominator, so no finite budget exists.
class UnboundedBudget : public Error {
 public:
  using Error::Error;
};

// The requested quantity is not defined for this mechanism.
class Unsupported : public Error {
 public:
  using Error::Error;
};

// Exact enumeration was asked for an instance above the configured cap.
class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

class DatasetError : public Error {
 public:
  using Error::Error;
};

class MissingColumn : public DatasetError {
 public:
  using DatasetError::DatasetError;
};

class EmptyDataset : public DatasetError {
 public:
  using DatasetError::DatasetError;
};

// A cell value in the target column has no entry in the coding map.
class UnknownCode : public DatasetError {
 public:
  UnknownCode(std::int64_t row, std::string value)
      : DatasetError("unknown code \"" + value + "\" in data row " +
                     std::to_string(row)),
        row_(row),
        value_(std::move(value)) {}

  std::int64_t row() const { return row_; }
  const std::string& value() const { return value_; }

 private:
  std::int64_t row_;
  std::string value_;
};

}  // namespace rrldp
