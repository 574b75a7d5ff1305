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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rrldp/rrldp.hpp"

namespace {

using rrldp::DatasetCoding;
using rrldp::DesignAux;
using rrldp::MechanismKind;
using rrldp::MechanismSpec;
using rrldp::Population;
using rrldp::PrivacyBudget;
using rrldp::RunManifest;
using rrldp::SweepConfig;

// Relative --out paths may be redirected by RRLDP_OUT_DIR; that is the only
// environment override the tool honors.
std::string ResolveOutPath(const std::string& out) {
  if (out.empty() || out.front() == '/') return out;
  const char* dir = std::getenv("RRLDP_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return out;
  std::string resolved(dir);
  if (resolved.back() != '/') resolved += '/';
  return resolved + out;
}

void WriteFileOrThrow(const std::string& path, const std::string& payload) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rrldp::Error("cannot open \"" + path + "\" for writing");
  out << payload;
  if (!out) throw rrldp::Error("failed writing \"" + path + "\"");
}

// Data goes to stdout or --out; the manifest accompanies it on stderr or in
// a .manifest.json sidecar. The data bytes stay reproducible; the manifest
// carries the timestamp.
void EmitRun(const RunManifest& manifest, const std::string& payload,
             const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    std::cerr << manifest.Serialize();
    return;
  }
  const std::string resolved = ResolveOutPath(out_path);
  WriteFileOrThrow(resolved, payload);
  WriteFileOrThrow(resolved + ".manifest.json", manifest.Serialize());
}

RunManifest MakeManifest(const std::string& command,
                         const std::vector<std::string>& argv,
                         std::optional<std::uint64_t> seed) {
  RunManifest manifest;
  manifest.command = command;
  manifest.argv = argv;
  manifest.seed = seed;
  manifest.created = rrldp::CurrentTimestampUtc();
  return manifest;
}

std::string FormatFixed(double value, int digits = 6) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  return std::string(buffer);
}

std::vector<double> SensitivityEpsilons(const std::string& level) {
  // Presets by sensitivity of the surveyed attribute: the more harmful a
  // disclosure, the tighter the budget range.
  if (level == "high") return {0.05, 0.1, 0.25, 0.5};
  if (level == "medium") return {0.5, 0.75, 1.0};
  if (level == "low") return {1.0, 1.5, 2.0};
  throw rrldp::InvalidParameter("unknown sensitivity level \"" + level +
                                "\" (use high, medium, or low)");
}

struct SimulateOptions {
  std::vector<std::string> mechanisms;
  std::vector<double> epsilons;
  std::string sensitivity_level;
  std::int64_t n = 0;
  double pi_a = 0.0;
  std::int64_t reps = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  double pi_b = 0.5;
  double p2 = 0.0;
  int threads = 0;
  std::string format = "csv";
  std::string out_path;
  std::string input_path;
  std::string column = "HCOVANY";
};

int RunSimulateLike(const std::string& command, const SimulateOptions& opt,
                    const std::vector<std::string>& raw_args,
                    bool analytic_allowed) {
  if (opt.reps > 0 && !opt.seed_given) {
    throw rrldp::InvalidParameter(
        "--seed is required when sampling (no hidden entropy)");
  }
  if (!analytic_allowed && opt.reps < 1) {
    throw rrldp::InvalidParameter("--reps must be at least 1");
  }
  if (!opt.sensitivity_level.empty() && !opt.epsilons.empty()) {
    throw rrldp::InvalidParameter(
        "give either --epsilon or --sensitivity-level, not both");
  }
  if (!opt.input_path.empty() && opt.n != 0) {
    throw rrldp::InvalidParameter("give either --input or --n, not both");
  }

  SweepConfig config;
  for (const std::string& name : opt.mechanisms) {
    config.kinds.push_back(rrldp::MechanismKindFromName(name));
  }
  config.epsilons = opt.sensitivity_level.empty()
                        ? opt.epsilons
                        : SensitivityEpsilons(opt.sensitivity_level);
  if (config.epsilons.empty()) {
    throw rrldp::InvalidParameter(
        "give at least one --epsilon or a --sensitivity-level");
  }
  config.pi_b = opt.pi_b;
  config.p2 = opt.p2;
  config.replications = opt.reps;
  config.master_seed = opt.seed;

  rrldp::SimulationReport report;
  if (!opt.input_path.empty()) {
    DatasetCoding coding;
    coding.column = opt.column;
    const Population pop = rrldp::IngestCsvFile(opt.input_path, coding);
    report = rrldp::RunSweepOn(config, pop, opt.threads);
  } else {
    config.n = opt.n;
    config.pi_a = opt.pi_a;
    report = rrldp::RunSweep(config, opt.threads);
  }

  const std::string payload = opt.format == "json"
                                  ? rrldp::EmitReportJson(report)
                                  : rrldp::EmitReportCsv(report);
  EmitRun(MakeManifest(command, raw_args,
                       opt.seed_given ? std::optional<std::uint64_t>(opt.seed)
                                      : std::nullopt),
          payload, opt.out_path);
  return 0;
}

MechanismSpec SpecFromFlags(const std::string& mechanism,
                            std::optional<double> p,
                            std::optional<double> pi_b,
                            const std::vector<double>& dist,
                            std::optional<double> epsilon, double p2) {
  const MechanismKind kind = rrldp::MechanismKindFromName(mechanism);
  if (epsilon.has_value()) {
    DesignAux aux;
    if (pi_b.has_value()) aux.pi_b = *pi_b;
    aux.p2 = p2;
    return rrldp::MechanismFromEpsilon(kind, PrivacyBudget(*epsilon), aux);
  }
  switch (kind) {
    case MechanismKind::kWarner:
      if (!p.has_value()) {
        throw rrldp::InvalidParameter("warner needs --p or --epsilon");
      }
      return MechanismSpec::Warner(rrldp::WarnerParams(*p));
    case MechanismKind::kSimmons:
      if (!p.has_value() || !pi_b.has_value()) {
        throw rrldp::InvalidParameter(
            "simmons needs --p and --pi-b, or --epsilon");
      }
      return MechanismSpec::Simmons(rrldp::SimmonsParams(*p, *pi_b));
    case MechanismKind::kChristofides:
    case MechanismKind::kImprovedChristofides: {
      if (dist.empty()) {
        throw rrldp::InvalidParameter(
            "christofides mechanisms need --dist or --epsilon");
      }
      rrldp::CardDistribution d(dist);
      return kind == MechanismKind::kChristofides
                 ? MechanismSpec::Christofides(std::move(d))
                 : MechanismSpec::ImprovedChristofides(std::move(d));
    }
  }
  throw rrldp::InvalidParameter("unhandled mechanism kind");
}

int Run(const std::vector<std::string>& args) {
  CLI::App app{"randomized-response mechanisms for local differential privacy"};
  app.require_subcommand(1);

  // ---- simulate ----------------------------------------------------------
  auto sim = SimulateOptions{};
  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo run of one mechanism");
  simulate->add_option("--mechanism", sim.mechanisms, "mechanism name")
      ->required()
      ->expected(1, 4);
  simulate->add_option("--epsilon", sim.epsilons, "privacy budget grid")
      ->delimiter(',');
  simulate->add_option("--sensitivity-level", sim.sensitivity_level,
                       "epsilon preset: high, medium, low");
  simulate->add_option("--n", sim.n, "population size");
  simulate->add_option("--pi-a", sim.pi_a, "true sensitive proportion");
  simulate->add_option("--reps", sim.reps, "replications")->required();
  auto* sim_seed =
      simulate->add_option("--seed", sim.seed, "master seed (required)");
  simulate->add_option("--pi-b", sim.pi_b, "simmons unrelated-truth chance");
  simulate->add_option("--p2", sim.p2, "christofides middle-card proportion");
  simulate->add_option("--threads", sim.threads, "worker threads (0 = auto)");
  simulate->add_option("--format", sim.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  simulate->add_option("--out", sim.out_path, "output file (default stdout)");
  simulate->add_option("--input", sim.input_path,
                       "survey an ingested CSV instead of --n/--pi-a");
  simulate->add_option("--column", sim.column, "target column for --input");

  // ---- sweep -------------------------------------------------------------
  auto swp = SimulateOptions{};
  swp.mechanisms = {"warner", "simmons", "christofides",
                    "improved-christofides"};
  CLI::App* sweep = app.add_subcommand(
      "sweep", "variance-vs-epsilon grid over several mechanisms");
  sweep->add_option("--mechanism", swp.mechanisms,
                    "mechanisms (default: all four)")
      ->expected(1, 4);
  sweep->add_option("--epsilon", swp.epsilons, "privacy budget grid")
      ->delimiter(',');
  sweep->add_option("--sensitivity-level", swp.sensitivity_level,
                    "epsilon preset: high, medium, low");
  sweep->add_option("--n", swp.n, "population size")->required();
  sweep->add_option("--pi-a", swp.pi_a, "true sensitive proportion")
      ->required();
  sweep->add_option("--reps", swp.reps,
                    "replications (0 = analytic-only, no sampling)");
  auto* swp_seed = sweep->add_option("--seed", swp.seed, "master seed");
  sweep->add_option("--pi-b", swp.pi_b, "simmons unrelated-truth chance");
  sweep->add_option("--p2", swp.p2, "christofides middle-card proportion");
  sweep->add_option("--threads", swp.threads, "worker threads (0 = auto)");
  sweep->add_option("--format", swp.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", swp.out_path, "output file (default stdout)");

  // ---- compare -----------------------------------------------------------
  struct {
    std::int64_t n = 0;
    double epsilon = 0.0;
    double p2 = 0.0;
    std::optional<double> pi_a;
    std::uint64_t seed = 0;
    std::string out_path;
  } cmp;
  CLI::App* compare = app.add_subcommand(
      "compare", "regime thresholds and crossover interval");
  compare->add_option("--n", cmp.n, "population size")->required();
  compare->add_option("--epsilon", cmp.epsilon, "privacy budget")->required();
  compare->add_option("--p2", cmp.p2, "christofides middle-card proportion");
  compare->add_option("--pi-a", cmp.pi_a,
                      "also rank the mechanisms at this proportion");
  compare->add_option("--seed", cmp.seed, "accepted for uniformity; unused");
  compare->add_option("--out", cmp.out_path, "output file (default stdout)");

  // ---- sample-size -------------------------------------------------------
  struct {
    std::string mechanism;
    double epsilon = 0.0;
    double var_target = 0.0;
    double p2 = 0.0;
    std::optional<double> pi_a;
    bool worst_case = false;
    std::uint64_t seed = 0;
    std::string out_path;
  } ssz;
  CLI::App* sample_size = app.add_subcommand(
      "sample-size", "smallest N meeting a variance target");
  sample_size->add_option("--mechanism", ssz.mechanism, "mechanism name")
      ->required();
  sample_size->add_option("--epsilon", ssz.epsilon, "privacy budget")
      ->required();
  sample_size->add_option("--var", ssz.var_target, "variance target")
      ->required();
  sample_size->add_option("--p2", ssz.p2, "christofides middle-card proportion");
  sample_size->add_option("--pi-a", ssz.pi_a, "true sensitive proportion");
  sample_size->add_flag("--worst-case", ssz.worst_case,
                        "use pi_a = 1/2 (improved christofides only)");
  sample_size->add_option("--seed", ssz.seed,
                          "accepted for uniformity; unused");
  sample_size->add_option("--out", ssz.out_path, "output file");

  // ---- design ------------------------------------------------------------
  struct {
    std::string mechanism;
    double epsilon = 0.0;
    double pi_b = 0.5;
    double p2 = 0.0;
    std::uint64_t seed = 0;
    std::string out_path;
  } dsn;
  CLI::App* design = app.add_subcommand(
      "design", "mechanism parameters that spend a given budget");
  design->add_option("--mechanism", dsn.mechanism, "mechanism name")
      ->required();
  design->add_option("--epsilon", dsn.epsilon, "privacy budget")->required();
  design->add_option("--pi-b", dsn.pi_b, "simmons unrelated-truth chance");
  design->add_option("--p2", dsn.p2, "christofides middle-card proportion");
  design->add_option("--seed", dsn.seed, "accepted for uniformity; unused");
  design->add_option("--out", dsn.out_path, "output file");

  // ---- oracle ------------------------------------------------------------
  struct {
    std::string mechanism;
    std::int64_t n = 0;
    double pi_a = 0.0;
    std::optional<double> p;
    std::optional<double> pi_b;
    std::vector<double> dist;
    std::optional<double> epsilon;
    double p2 = 0.0;
    int max_n = 8;
    std::uint64_t seed = 0;
    std::string out_path;
  } orc;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "exact enumeration of the estimator's mean and variance");
  oracle->add_option("--mechanism", orc.mechanism, "mechanism name")
      ->required();
  oracle->add_option("--n", orc.n, "population size")->required();
  oracle->add_option("--pi-a", orc.pi_a, "true sensitive proportion")
      ->required();
  oracle->add_option("--p", orc.p, "warner/simmons truth probability");
  oracle->add_option("--pi-b", orc.pi_b, "simmons unrelated-truth chance");
  oracle->add_option("--dist", orc.dist, "card proportions, e.g. 0.2,0.5,0.3")
      ->delimiter(',');
  oracle->add_option("--epsilon", orc.epsilon,
                     "derive the design from a budget instead");
  oracle->add_option("--p2", orc.p2,
                     "christofides middle-card proportion (with --epsilon)");
  oracle->add_option("--max-n", orc.max_n, "enumeration cap (default 8)");
  oracle->add_option("--seed", orc.seed, "accepted for uniformity; unused");
  oracle->add_option("--out", orc.out_path, "output file");

  // ---- ingest ------------------------------------------------------------
  struct {
    std::string path;
    std::string column = "HCOVANY";
    std::vector<std::string> sensitive_codes = {"1"};
    std::vector<std::string> insensitive_codes = {"2"};
    std::int64_t synthetic_n = 0;
    double pi_a = 0.0778;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out_path;
  } ing;
  CLI::App* ingest = app.add_subcommand(
      "ingest", "read (or synthesize) a coded survey dataset");
  ingest->add_option("path", ing.path, "CSV file with a header row");
  ingest->add_option("--column", ing.column, "target column name or index");
  ingest->add_option("--sensitive-code", ing.sensitive_codes,
                     "codes mapping to x = 1");
  ingest->add_option("--insensitive-code", ing.insensitive_codes,
                     "codes mapping to x = 0");
  ingest->add_option("--synthetic", ing.synthetic_n,
                     "generate a synthetic dataset of this size instead");
  ingest->add_option("--pi-a", ing.pi_a,
                     "sensitive proportion for --synthetic");
  auto* ing_seed =
      ingest->add_option("--seed", ing.seed, "shuffle seed for --synthetic");
  ingest->add_option("--out", ing.out_path,
                     "file for the synthesized dataset (required with "
                     "--synthetic)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("rrldp");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code != 0) std::cerr << "\n" << app.help();
    return code;
  }

  sim.seed_given = sim_seed->count() > 0;
  swp.seed_given = swp_seed->count() > 0;
  ing.seed_given = ing_seed->count() > 0;

  try {
    if (simulate->parsed()) {
      return RunSimulateLike("simulate", sim, args, /*analytic_allowed=*/false);
    }
    if (sweep->parsed()) {
      return RunSimulateLike("sweep", swp, args, /*analytic_allowed=*/true);
    }

    if (compare->parsed()) {
      const PrivacyBudget eps(cmp.epsilon);
      const rrldp::Interval band =
          rrldp::RegimeThresholds(cmp.n, eps, cmp.p2);
      const rrldp::Interval cross = rrldp::IcMcCrossover(cmp.n);
      std::string payload;
      payload += "pi_a1 = " + FormatFixed(band.lo) + "\n";
      payload += "pi_a2 = " + FormatFixed(band.hi) + "\n";
      payload += "interval_length = " + FormatFixed(band.Length()) + "\n";
      payload += "ic_mc_lo = " + FormatFixed(cross.lo) + "\n";
      payload += "ic_mc_hi = " + FormatFixed(cross.hi) + "\n";
      if (cmp.pi_a.has_value()) {
        const rrldp::RegimeReport report =
            rrldp::ClassifyRegime(*cmp.pi_a, cmp.n, eps, cmp.p2);
        payload += "ordering =";
        for (std::size_t i = 0; i < report.ordering.size(); ++i) {
          const auto& entry = report.ordering[i];
          if (i > 0) payload += entry.tied_with_previous ? " =" : " <";
          payload += " ";
          payload += rrldp::VarianceFamilyName(entry.family);
        }
        payload += "\n";
      }
      EmitRun(MakeManifest("compare", args, std::nullopt), payload,
              cmp.out_path);
      return 0;
    }

    if (sample_size->parsed()) {
      const MechanismKind kind = rrldp::MechanismKindFromName(ssz.mechanism);
      std::optional<double> pi_a = ssz.pi_a;
      if (ssz.worst_case) {
        if (pi_a.has_value()) {
          throw rrldp::InvalidParameter(
              "give either --pi-a or --worst-case, not both");
        }
        pi_a = 0.5;
      }
      const std::int64_t n = rrldp::MinSampleSize(
          kind, PrivacyBudget(ssz.epsilon), ssz.var_target, ssz.p2, pi_a);
      EmitRun(MakeManifest("sample-size", args, std::nullopt),
              std::to_string(n) + "\n", ssz.out_path);
      return 0;
    }

    if (design->parsed()) {
      const MechanismKind kind = rrldp::MechanismKindFromName(dsn.mechanism);
      const MechanismSpec spec = rrldp::MechanismFromEpsilon(
          kind, PrivacyBudget(dsn.epsilon), DesignAux{dsn.pi_b, dsn.p2});
      nlohmann::ordered_json j;
      j["schema"] = std::string(rrldp::kSchemaTag);
      j["kind"] = "design";
      j["mechanism"] = std::string(spec.name());
      nlohmann::ordered_json params;
      switch (kind) {
        case MechanismKind::kWarner:
          params["p"] = spec.warner().p();
          break;
        case MechanismKind::kSimmons:
          params["p"] = spec.simmons().p();
          params["pi_b"] = spec.simmons().pi_b();
          break;
        case MechanismKind::kChristofides:
        case MechanismKind::kImprovedChristofides: {
          const auto& p = spec.distribution().proportions();
          params["p1"] = p[0];
          params["p2"] = p[1];
          params["p3"] = p[2];
          break;
        }
      }
      j["params"] = std::move(params);
      j["epsilon"] = rrldp::EpsilonOf(spec).value();
      EmitRun(MakeManifest("design", args, std::nullopt), j.dump(2) + "\n",
              dsn.out_path);
      return 0;
    }

    if (oracle->parsed()) {
      const MechanismSpec spec = SpecFromFlags(
          orc.mechanism, orc.p, orc.pi_b, orc.dist, orc.epsilon, orc.p2);
      const Population pop = Population::FromProportion(orc.n, orc.pi_a);
      const rrldp::ExactResult result =
          rrldp::ExactOracle(spec, pop, orc.max_n);
      nlohmann::ordered_json j;
      j["schema"] = std::string(rrldp::kSchemaTag);
      j["kind"] = "oracle";
      j["mechanism"] = std::string(spec.name());
      j["n"] = orc.n;
      j["pi_a"] = pop.TrueProportion();
      j["mean"] = result.mean;
      j["variance"] = result.variance;
      j["var_theoretical"] =
          rrldp::TheoreticalVariance(spec, orc.n, pop.TrueProportion());
      j["outcomes_enumerated"] = result.outcomes_enumerated;
      EmitRun(MakeManifest("oracle", args, std::nullopt), j.dump(2) + "\n",
              orc.out_path);
      return 0;
    }

    if (ingest->parsed()) {
      if (ing.synthetic_n > 0) {
        if (!ing.seed_given) {
          throw rrldp::InvalidParameter(
              "--seed is required with --synthetic (no hidden entropy)");
        }
        if (ing.out_path.empty()) {
          throw rrldp::InvalidParameter("--synthetic needs --out FILE");
        }
        const auto bits =
            rrldp::SyntheticBits(ing.synthetic_n, ing.pi_a, ing.seed);
        std::ostringstream dataset;
        rrldp::WriteCoverageCsv(dataset, bits, ing.column);
        const std::string resolved = ResolveOutPath(ing.out_path);
        WriteFileOrThrow(resolved, dataset.str());
        WriteFileOrThrow(
            resolved + ".manifest.json",
            MakeManifest("ingest", args, ing.seed).Serialize());
        const Population pop(bits);
        std::cout << "n = " << pop.Size() << "\n"
                  << "pi_a = " << FormatFixed(pop.TrueProportion()) << "\n";
        return 0;
      }
      if (ing.path.empty()) {
        throw rrldp::InvalidParameter("give a CSV path or --synthetic N");
      }
      DatasetCoding coding;
      coding.column = ing.column;
      coding.code_to_bit.clear();
      for (const std::string& code : ing.sensitive_codes) {
        coding.code_to_bit[code] = 1;
      }
      for (const std::string& code : ing.insensitive_codes) {
        coding.code_to_bit[code] = 0;
      }
      const Population pop = rrldp::IngestCsvFile(ing.path, coding);
      std::string payload;
      payload += "n = " + std::to_string(pop.Size()) + "\n";
      payload += "pi_a = " + FormatFixed(pop.TrueProportion()) + "\n";
      EmitRun(MakeManifest("ingest", args, std::nullopt), payload,
              ing.out_path);
      return 0;
    }
  } catch (const rrldp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand handled\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (!args.empty() && args[0] == "--from-manifest") {
    if (args.size() != 2) {
      std::cerr << "usage: rrldp --from-manifest FILE\n";
      return 2;
    }
    try {
      std::ifstream in(args[1], std::ios::binary);
      if (!in) throw rrldp::Error("cannot open \"" + args[1] + "\"");
      std::ostringstream buffer;
      buffer << in.rdbuf();
      const RunManifest manifest = RunManifest::Parse(buffer.str());
      args = manifest.argv;
    } catch (const rrldp::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return Run(args);
}
