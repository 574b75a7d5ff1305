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
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rrldp/csv.hpp"
#include "rrldp/errors.hpp"
#include "rrldp/population.hpp"
#include "rrldp/random.hpp"

namespace rrldp {

// How to turn one CSV column into sensitive bits. The default is the
// health-coverage coding: code 1 means not covered (the sensitive attribute,
// x = 1), code 2 means covered (x = 0). The mapping must be total over the
// codes that actually occur; anything else is an error, never dropped.
struct DatasetCoding {
  std::string column = "HCOVANY";
  std::map<std::string, int> code_to_bit = {{"1", 1}, {"2", 0}};
};

// Parses CSV text with a header row into a population, one respondent per
// data row in file order.
inline Population IngestCsvText(std::string_view text,
                                const DatasetCoding& coding) {
  const auto records = ParseCsv(text);
  if (records.empty()) throw EmptyDataset("dataset has no header row");

  const auto& header = records.front();
  std::size_t column = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == coding.column) {
      column = i;
      break;
    }
  }
  if (column == header.size()) {
    // Fall back to a zero-based column index.
    try {
      const auto idx = std::stoul(coding.column);
      if (idx < header.size()) column = idx;
    } catch (...) {
    }
  }
  if (column >= header.size()) {
    throw MissingColumn("column \"" + coding.column +
                        "\" not found in header");
  }
  if (records.size() == 1) throw EmptyDataset("dataset has no data rows");

  std::vector<std::uint8_t> bits;
  bits.reserve(records.size() - 1);
  for (std::size_t row = 1; row < records.size(); ++row) {
    const auto& fields = records[row];
    if (column >= fields.size()) {
      throw DatasetError("data row " + std::to_string(row) + " has only " +
                         std::to_string(fields.size()) + " fields");
    }
    const std::string& value = fields[column];
    const auto it = coding.code_to_bit.find(value);
    if (it == coding.code_to_bit.end()) {
      throw UnknownCode(static_cast<std::int64_t>(row), value);
    }
    bits.push_back(static_cast<std::uint8_t>(it->second));
  }
  return Population(std::move(bits));
}

inline Population IngestCsvFile(const std::string& path,
                                const DatasetCoding& coding) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot open \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return IngestCsvText(buffer.str(), coding);
}

// Sensitive bits with exactly round(n * pi_a) ones, in a seeded shuffle.
inline std::vector<std::uint8_t> SyntheticBits(std::int64_t n, double pi_a,
                                               std::uint64_t seed) {
  if (n < 2) throw InvalidParameter("synthetic dataset needs n >= 2");
  if (pi_a < 0.0 || pi_a > 1.0) {
    throw InvalidParameter("pi_a must lie in [0, 1]");
  }
  const auto ones =
      static_cast<std::int64_t>(std::llround(static_cast<double>(n) * pi_a));
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
  for (std::int64_t i = 0; i < ones; ++i) bits[static_cast<std::size_t>(i)] = 1;
  RandomSource rng(seed);
  for (std::size_t i = bits.size() - 1; i > 0; --i) {
    std::swap(bits[i], bits[rng.NextIndex(i + 1)]);
  }
  return bits;
}

// Writes a coverage-style dataset: a serial column plus the coded target
// column (1 = sensitive, 2 = not sensitive), matching the default coding.
inline void WriteCoverageCsv(std::ostream& out,
                             const std::vector<std::uint8_t>& bits,
                             const std::string& column = "HCOVANY") {
  out << "SERIAL," << column << "\n";
  for (std::size_t i = 0; i < bits.size(); ++i) {
    out << (i + 1) << ',' << (bits[i] == 1 ? '1' : '2') << "\n";
  }
}

}  // namespace rrldp
