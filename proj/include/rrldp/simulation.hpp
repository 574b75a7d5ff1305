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
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "rrldp/analytics.hpp"
#include "rrldp/errors.hpp"
#include "rrldp/mechanisms.hpp"
#include "rrldp/population.hpp"
#include "rrldp/random.hpp"

namespace rrldp {

namespace internal {

// Runs fn over [0, count) in contiguous chunks. Chunk boundaries depend on
// the thread count but the work done per index does not, so callers that
// write into per-index slots get identical results for any thread count.
// The first exception a worker raises is rethrown after all threads join.
inline void ParallelFor(std::int64_t count, int threads,
                        const std::function<void(std::int64_t, std::int64_t)>& fn) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  threads = static_cast<int>(
      std::min<std::int64_t>(threads, std::max<std::int64_t>(count, 1)));
  if (threads == 1) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  const std::int64_t chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::int64_t begin = static_cast<std::int64_t>(t) * chunk;
    const std::int64_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    std::exception_ptr& slot = errors[static_cast<std::size_t>(t)];
    pool.emplace_back([&fn, &slot, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        slot = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const std::exception_ptr& error : errors) {
    if (error) std::rethrow_exception(error);
  }
}

}  // namespace internal

// One (mechanism, epsilon) grid cell of a sweep.
struct CellStats {
  double mean_estimate = 0.0;
  double var_empirical = 0.0;  // population convention: divide by R
  double bias = 0.0;
  double var_theoretical = 0.0;
  std::int64_t replications = 0;
};

// Sweep over mechanisms x privacy budgets at fixed (N, pi_A). replications
// == 0 produces analytic-only rows (no sampling), the mode for very large N.
struct SweepConfig {
  std::vector<MechanismKind> kinds;
  std::vector<double> epsilons;
  std::int64_t n = 0;
  double pi_a = 0.0;
  double pi_b = 0.5;  // Simmons design knob
  double p2 = 0.0;    // Christofides-family design knob
  std::int64_t replications = 0;
  std::uint64_t master_seed = 0;
};

struct ReportRow {
  MechanismKind kind = MechanismKind::kWarner;
  double epsilon = 0.0;
  CellStats stats;
};

struct SimulationReport {
  SweepConfig config;
  std::vector<ReportRow> rows;
};

// R independent survey+estimate replications of one mechanism over one
// population. Replicate r draws its randomness from
// DeriveSeed(master_seed, cell_index, r), so any execution order and any
// thread count produce the same report.
inline CellStats SimulateCell(const MechanismSpec& spec, const Population& pop,
                              std::int64_t replications,
                              std::uint64_t master_seed,
                              std::uint64_t cell_index, int threads = 0) {
  if (replications < 1) {
    throw InvalidParameter("simulation needs at least one replication");
  }
  std::vector<double> estimates(static_cast<std::size_t>(replications));
  internal::ParallelFor(
      replications, threads, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t r = begin; r < end; ++r) {
          RandomSource rng(DeriveSeed(master_seed, cell_index,
                                      static_cast<std::uint64_t>(r)));
          const std::vector<int> responses = RunSurvey(pop, spec, rng);
          estimates[static_cast<std::size_t>(r)] =
              EstimateProportion(responses, spec).value;
        }
      });

  // Reduction is single-threaded and index-ordered to keep the floating
  // point result independent of the thread count.
  double mean = 0.0;
  for (double e : estimates) mean += e;
  mean /= static_cast<double>(replications);
  double m2 = 0.0;
  for (double e : estimates) m2 += (e - mean) * (e - mean);

  CellStats stats;
  stats.mean_estimate = mean;
  stats.var_empirical = m2 / static_cast<double>(replications);
  stats.bias = mean - pop.TrueProportion();
  stats.var_theoretical = TheoreticalVariance(spec, pop.Size(), pop.TrueProportion());
  stats.replications = replications;
  return stats;
}

// Materializes the config's epsilon-parameterized mechanism for one cell.
inline MechanismSpec CellMechanism(const SweepConfig& config,
                                   MechanismKind kind, double epsilon) {
  return MechanismFromEpsilon(kind, PrivacyBudget(epsilon),
                              DesignAux{config.pi_b, config.p2});
}

// Runs the full grid over an explicit population (respondent order is taken
// as-is, which matters for ingested datasets). Cell indices are row-major
// over kinds x epsilons in declared order; they seed the per-cell replicate
// streams.
inline SimulationReport RunSweepOn(const SweepConfig& config,
                                   const Population& pop, int threads = 0) {
  if (config.kinds.empty() || config.epsilons.empty()) {
    throw InvalidParameter("sweep needs at least one mechanism and epsilon");
  }
  SimulationReport report;
  report.config = config;
  report.config.n = pop.Size();
  report.config.pi_a = pop.TrueProportion();
  std::uint64_t cell_index = 0;
  for (MechanismKind kind : config.kinds) {
    for (double epsilon : config.epsilons) {
      const MechanismSpec spec = CellMechanism(config, kind, epsilon);
      ReportRow row;
      row.kind = kind;
      row.epsilon = epsilon;
      if (config.replications > 0) {
        row.stats = SimulateCell(spec, pop, config.replications,
                                 config.master_seed, cell_index, threads);
      } else {
        row.stats.var_theoretical =
            TheoreticalVariance(spec, pop.Size(), pop.TrueProportion());
        row.stats.replications = 0;
      }
      report.rows.push_back(row);
      ++cell_index;
    }
  }
  return report;
}

// Grid driver. With replications > 0 the population is materialized (which
// requires n * pi_a to be an integer); the analytic-only mode evaluates the
// closed forms directly and accepts any pi_a, which is what very large
// survey scales need.
inline SimulationReport RunSweep(const SweepConfig& config, int threads = 0) {
  if (config.replications > 0) {
    const Population pop = Population::FromProportion(config.n, config.pi_a);
    return RunSweepOn(config, pop, threads);
  }
  if (config.kinds.empty() || config.epsilons.empty()) {
    throw InvalidParameter("sweep needs at least one mechanism and epsilon");
  }
  if (config.n < 2) throw InvalidParameter("sweep needs n >= 2");
  if (!(config.pi_a >= 0.0 && config.pi_a <= 1.0)) {
    throw InvalidParameter("pi_a must lie in [0, 1]");
  }
  SimulationReport report;
  report.config = config;
  for (MechanismKind kind : config.kinds) {
    for (double epsilon : config.epsilons) {
      const MechanismSpec spec = CellMechanism(config, kind, epsilon);
      ReportRow row;
      row.kind = kind;
      row.epsilon = epsilon;
      row.stats.var_theoretical =
          TheoreticalVariance(spec, config.n, config.pi_a);
      row.stats.replications = 0;
      report.rows.push_back(row);
    }
  }
  return report;
}

}  // namespace rrldp
