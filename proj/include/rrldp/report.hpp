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

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rrldp/csv.hpp"
#include "rrldp/errors.hpp"
#include "rrldp/manifest.hpp"
#include "rrldp/simulation.hpp"

namespace rrldp {

inline constexpr std::string_view kReportCsvHeader =
    "mechanism,epsilon,var_theoretical,var_empirical,bias,R,N,pi_A,p2";

// One parsed report row. Empirical fields are absent for analytic-only rows.
struct ParsedReportRow {
  std::string mechanism;
  double epsilon = 0.0;
  double var_theoretical = 0.0;
  std::optional<double> var_empirical;
  std::optional<double> bias;
  std::int64_t replications = 0;
  std::int64_t n = 0;
  double pi_a = 0.0;
  double p2 = 0.0;
};

// Stable field order, shortest-round-trip numbers, one row per grid cell.
// Emitting the same report twice yields identical bytes.
inline std::string EmitReportCsv(const SimulationReport& report) {
  std::string out(kReportCsvHeader);
  out += "\n";
  for (const ReportRow& row : report.rows) {
    out += MechanismName(row.kind);
    out += ',';
    out += FormatDouble(row.epsilon);
    out += ',';
    out += FormatDouble(row.stats.var_theoretical);
    out += ',';
    if (row.stats.replications > 0) {
      out += FormatDouble(row.stats.var_empirical);
      out += ',';
      out += FormatDouble(row.stats.bias);
    } else {
      out += ',';
    }
    out += ',';
    out += std::to_string(row.stats.replications);
    out += ',';
    out += std::to_string(report.config.n);
    out += ',';
    out += FormatDouble(report.config.pi_a);
    out += ',';
    out += FormatDouble(report.config.p2);
    out += "\n";
  }
  return out;
}

inline std::vector<ParsedReportRow> ParseReportCsv(const std::string& text) {
  const auto records = ParseCsv(text);
  if (records.empty()) throw DatasetError("report CSV has no header");
  std::vector<ParsedReportRow> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    if (f.size() != 9) {
      throw DatasetError("report row " + std::to_string(i) + " has " +
                         std::to_string(f.size()) + " fields, expected 9");
    }
    ParsedReportRow row;
    row.mechanism = f[0];
    row.epsilon = ParseDouble(f[1]);
    row.var_theoretical = ParseDouble(f[2]);
    if (!f[3].empty()) row.var_empirical = ParseDouble(f[3]);
    if (!f[4].empty()) row.bias = ParseDouble(f[4]);
    row.replications = static_cast<std::int64_t>(ParseDouble(f[5]));
    row.n = static_cast<std::int64_t>(ParseDouble(f[6]));
    row.pi_a = ParseDouble(f[7]);
    row.p2 = ParseDouble(f[8]);
    rows.push_back(std::move(row));
  }
  return rows;
}

// Versioned JSON form; the manifest, when given, is embedded.
inline std::string EmitReportJson(const SimulationReport& report,
                                  const RunManifest* manifest = nullptr) {
  nlohmann::ordered_json j;
  j["schema"] = std::string(kSchemaTag);
  j["kind"] = "simulation-report";
  if (manifest != nullptr) j["manifest"] = manifest->ToJson();
  j["n"] = report.config.n;
  j["pi_a"] = report.config.pi_a;
  j["pi_b"] = report.config.pi_b;
  j["p2"] = report.config.p2;
  j["replications"] = report.config.replications;
  j["seed"] = report.config.master_seed;
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const ReportRow& row : report.rows) {
    nlohmann::ordered_json cell;
    cell["mechanism"] = std::string(MechanismName(row.kind));
    cell["epsilon"] = row.epsilon;
    cell["var_theoretical"] = row.stats.var_theoretical;
    if (row.stats.replications > 0) {
      cell["var_empirical"] = row.stats.var_empirical;
      cell["bias"] = row.stats.bias;
      cell["mean_estimate"] = row.stats.mean_estimate;
    } else {
      cell["var_empirical"] = nullptr;
      cell["bias"] = nullptr;
      cell["mean_estimate"] = nullptr;
    }
    cell["R"] = row.stats.replications;
    cells.push_back(std::move(cell));
  }
  j["cells"] = std::move(cells);
  return j.dump(2) + "\n";
}

}  // namespace rrldp
