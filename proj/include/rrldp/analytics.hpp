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
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "rrldp/deck.hpp"
#include "rrldp/errors.hpp"
#include "rrldp/mechanisms.hpp"

namespace rrldp {

// The local privacy budget. epsilon = 0 would make every variance formula
// singular (e^eps - 1 denominators), so only positive budgets exist.
class PrivacyBudget {
 public:
  explicit PrivacyBudget(double epsilon) : epsilon_(epsilon) {
    if (!(std::isfinite(epsilon) && epsilon > 0.0)) {
      throw InvalidParameter("privacy budget must be a positive real, got " +
                             std::to_string(epsilon));
    }
  }
  double value() const { return epsilon_; }

 private:
  double epsilon_;
};

// Proportion estimates are reported unclamped; the unbiasedness guarantees
// concern the raw statistic. Clamped() is the presentation accessor.
struct Estimate {
  double value = 0.0;
  double Clamped() const { return std::clamp(value, 0.0, 1.0); }
};

namespace internal {

inline void CheckBitResponses(std::span<const int> responses) {
  if (responses.empty()) throw InvalidParameter("no responses to estimate on");
  for (int r : responses) {
    if (r != 0 && r != 1) {
      throw InvalidParameter("bit response out of range: " +
                             std::to_string(r));
    }
  }
}

inline double Mean(std::span<const int> responses) {
  double sum = 0.0;
  for (int r : responses) sum += static_cast<double>(r);
  return sum / static_cast<double>(responses.size());
}

}  // namespace internal

// pi_hat = (N1/N - (1-p)) / (2p - 1).
inline Estimate WarnerEstimate(std::span<const int> responses,
                               const WarnerParams& params) {
  internal::CheckBitResponses(responses);
  const double yes = internal::Mean(responses);
  return {(yes - (1.0 - params.p())) / (2.0 * params.p() - 1.0)};
}

// pi_hat = (N1/N - (1-p) pi_B) / p.
inline Estimate SimmonsEstimate(std::span<const int> responses,
                                const SimmonsParams& params) {
  internal::CheckBitResponses(responses);
  const double yes = internal::Mean(responses);
  return {(yes - (1.0 - params.p()) * params.pi_b()) / params.p()};
}

// pi_hat = (mean(X) - E[Y]) / (L+1 - 2E[Y]). Shared by the modified and
// improved variants; for a concrete deck pass its realized distribution.
inline Estimate ChristofidesEstimate(std::span<const int> responses,
                                     const CardDistribution& dist) {
  if (responses.empty()) throw InvalidParameter("no responses to estimate on");
  for (int r : responses) {
    if (r < 1 || r > dist.NumValues()) {
      throw InvalidParameter("card response out of range: " +
                             std::to_string(r));
    }
  }
  double sum = 0.0;
  for (int r : responses) sum += static_cast<double>(r);
  const double mean = sum / static_cast<double>(responses.size());
  return {(mean - dist.MeanY()) / dist.Denominator()};
}

// Dispatching estimator. For improved Christofides the responses are assumed
// to come from a survey of size responses.size(), so the matching realized
// deck distribution is reconstructed here.
inline Estimate EstimateProportion(std::span<const int> responses,
                                   const MechanismSpec& spec) {
  switch (spec.kind()) {
    case MechanismKind::kWarner:
      return WarnerEstimate(responses, spec.warner());
    case MechanismKind::kSimmons:
      return SimmonsEstimate(responses, spec.simmons());
    case MechanismKind::kChristofides:
      return ChristofidesEstimate(responses, spec.distribution());
    case MechanismKind::kImprovedChristofides: {
      const Deck deck = Deck::Build(
          static_cast<std::int64_t>(responses.size()), spec.distribution());
      return ChristofidesEstimate(responses, deck.RealizedDistribution());
    }
  }
  throw InvalidParameter("unhandled mechanism kind");
}

// ----- Closed-form variances under whole-population (without-replacement)
// ----- surveying.

inline double WarnerVariance(const WarnerParams& params, std::int64_t n) {
  const double p = params.p();
  const double d = 2.0 * p - 1.0;
  return p * (1.0 - p) / (static_cast<double>(n) * d * d);
}

inline double SimmonsVariance(const SimmonsParams& params, std::int64_t n,
                              double pi_a) {
  const double p = params.p();
  const double q = (1.0 - p) * params.pi_b();
  const double nd = static_cast<double>(n);
  return q * (1.0 - q) / (nd * p * p) + pi_a * (1.0 - p - 2.0 * q) / (nd * p);
}

inline double ChristofidesVariance(const CardDistribution& dist,
                                   std::int64_t n) {
  const double d = dist.Denominator();
  return dist.VarY() / (static_cast<double>(n) * d * d);
}

// Takes the realized distribution of the concrete N-card deck.
inline double ImprovedChristofidesVariance(const CardDistribution& realized,
                                           std::int64_t n, double pi_a) {
  const double d = realized.Denominator();
  return 4.0 * pi_a * (1.0 - pi_a) * realized.VarY() /
         (static_cast<double>(n - 1) * d * d);
}

namespace internal {

inline void CheckVarianceArgs(std::int64_t n, double pi_a) {
  if (n < 2) throw InvalidParameter("variance formulas require N >= 2");
  if (!(pi_a >= 0.0 && pi_a <= 1.0)) {
    throw InvalidParameter("pi_a must lie in [0, 1]");
  }
}

}  // namespace internal

// Exact variance of the estimator. pi_a enters only for Simmons and improved
// Christofides. For improved Christofides the nominal distribution is
// realized as an N-card deck first, because that is the deck the survey of
// size N actually uses.
inline double TheoreticalVariance(const MechanismSpec& spec, std::int64_t n,
                                  double pi_a) {
  internal::CheckVarianceArgs(n, pi_a);
  switch (spec.kind()) {
    case MechanismKind::kWarner:
      return WarnerVariance(spec.warner(), n);
    case MechanismKind::kSimmons:
      return SimmonsVariance(spec.simmons(), n, pi_a);
    case MechanismKind::kChristofides:
      return ChristofidesVariance(spec.distribution(), n);
    case MechanismKind::kImprovedChristofides: {
      const Deck deck = Deck::Build(n, spec.distribution());
      return ImprovedChristofidesVariance(deck.RealizedDistribution(), n,
                                          pi_a);
    }
  }
  throw InvalidParameter("unhandled mechanism kind");
}

// Variance of the classical with-replacement counterparts: the modified
// variance plus pi_a(1-pi_a)/N. Improved Christofides has no classical
// counterpart.
inline double WithReplacementVariance(const MechanismSpec& spec,
                                      std::int64_t n, double pi_a) {
  if (spec.kind() == MechanismKind::kImprovedChristofides) {
    throw Unsupported(
        "improved christofides has no with-replacement counterpart");
  }
  return TheoreticalVariance(spec, n, pi_a) +
         pi_a * (1.0 - pi_a) / static_cast<double>(n);
}

// ----- Privacy budgets and their inverses.

// max_k ln(p_{L+1-k} / p_k) over outputs that can occur. A pair with a
// positive numerator over a zero denominator has no finite budget.
inline PrivacyBudget DistributionEpsilon(const CardDistribution& dist) {
  const auto& p = dist.proportions();
  const int L = dist.NumValues();
  double best = 0.0;
  for (int k = 0; k < L; ++k) {
    const double num = p[static_cast<std::size_t>(L - 1 - k)];
    const double den = p[static_cast<std::size_t>(k)];
    if (num == 0.0 && den == 0.0) continue;  // output k+1 never occurs
    if (den == 0.0) {
      throw UnboundedBudget("p_" + std::to_string(k + 1) +
                            " = 0 while its mirror is positive");
    }
    best = std::max(best, std::log(num / den));
  }
  return PrivacyBudget(best);
}

inline PrivacyBudget EpsilonOf(const MechanismSpec& spec) {
  switch (spec.kind()) {
    case MechanismKind::kWarner: {
      const double p = spec.warner().p();
      return PrivacyBudget(std::log((1.0 - p) / p));
    }
    case MechanismKind::kSimmons: {
      const double p = spec.simmons().p();
      const double b = std::min(spec.simmons().pi_b(),
                                1.0 - spec.simmons().pi_b());
      return PrivacyBudget(std::log1p(p / ((1.0 - p) * b)));
    }
    case MechanismKind::kChristofides:
    case MechanismKind::kImprovedChristofides:
      return DistributionEpsilon(spec.distribution());
  }
  throw InvalidParameter("unhandled mechanism kind");
}

// Auxiliary design knobs for the inverse parameterization. pi_b applies to
// Simmons; p2 to the Christofides family (card designs are fixed at L = 3).
struct DesignAux {
  double pi_b = 0.5;
  double p2 = 0.0;
};

// Builds the mechanism that spends exactly the given budget:
//   Warner:       p = 1 / (1 + e^eps)
//   Simmons:      p = b(e^eps - 1) / (1 + b(e^eps - 1)),  b = min(pi_b, 1-pi_b)
//   Christofides: (p1, p2, p3) = ((1-p2)/(e^eps+1), p2, e^eps(1-p2)/(e^eps+1)),
// the minimum-variance L = 3 design (shared by the improved variant).
inline MechanismSpec MechanismFromEpsilon(MechanismKind kind,
                                          PrivacyBudget eps,
                                          const DesignAux& aux = {}) {
  const double e = std::exp(eps.value());
  switch (kind) {
    case MechanismKind::kWarner:
      return MechanismSpec::Warner(WarnerParams(1.0 / (1.0 + e)));
    case MechanismKind::kSimmons: {
      if (!(aux.pi_b > 0.0 && aux.pi_b < 1.0)) {
        throw InvalidAux("pi_b must lie strictly inside (0, 1)");
      }
      const double b = std::min(aux.pi_b, 1.0 - aux.pi_b);
      const double t = b * std::expm1(eps.value());
      return MechanismSpec::Simmons(SimmonsParams(t / (1.0 + t), aux.pi_b));
    }
    case MechanismKind::kChristofides:
    case MechanismKind::kImprovedChristofides: {
      if (!(aux.p2 >= 0.0 && aux.p2 < 1.0)) {
        throw InvalidAux("p2 must lie in [0, 1)");
      }
      const double p1 = (1.0 - aux.p2) / (e + 1.0);
      const double p3 = e * p1;
      CardDistribution dist({p1, aux.p2, p3});
      return kind == MechanismKind::kChristofides
                 ? MechanismSpec::Christofides(std::move(dist))
                 : MechanismSpec::ImprovedChristofides(std::move(dist));
    }
  }
  throw InvalidParameter("unhandled mechanism kind");
}

namespace internal {

// (e^eps + 1)^2 / ((e^eps - 1)^2 (1 - p2)) - 1, the common bracket of the
// Christofides-family minimum variances.
inline double DesignBracket(double eps, double p2) {
  const double em1 = std::expm1(eps);
  const double ep1 = std::exp(eps) + 1.0;
  return ep1 * ep1 / (em1 * em1 * (1.0 - p2)) - 1.0;
}

}  // namespace internal

// Smallest achievable variance at a given budget:
//   Warner/Simmons:       e^eps / (N (e^eps - 1)^2)
//   Christofides:         bracket / (4N)
//   improved Christofides: pi_a(1-pi_a) bracket / (N-1)
inline double MinVarianceAtEpsilon(MechanismKind kind, PrivacyBudget eps,
                                   std::int64_t n, double pi_a, double p2) {
  internal::CheckVarianceArgs(n, pi_a);
  if (!(p2 >= 0.0 && p2 < 1.0)) throw InvalidAux("p2 must lie in [0, 1)");
  const double em1 = std::expm1(eps.value());
  switch (kind) {
    case MechanismKind::kWarner:
    case MechanismKind::kSimmons:
      return std::exp(eps.value()) / (static_cast<double>(n) * em1 * em1);
    case MechanismKind::kChristofides:
      return internal::DesignBracket(eps.value(), p2) /
             (4.0 * static_cast<double>(n));
    case MechanismKind::kImprovedChristofides:
      return pi_a * (1.0 - pi_a) * internal::DesignBracket(eps.value(), p2) /
             static_cast<double>(n - 1);
  }
  throw InvalidParameter("unhandled mechanism kind");
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double Length() const { return hi - lo; }
};

// Improved Christofides beats modified Christofides exactly when pi_a falls
// outside (1/2 - 1/(2 sqrt N), 1/2 + 1/(2 sqrt N)).
inline Interval IcMcCrossover(std::int64_t n) {
  if (n < 2) throw InvalidParameter("crossover requires N >= 2");
  const double h = 0.5 / std::sqrt(static_cast<double>(n));
  return {0.5 - h, 0.5 + h};
}

// The pi_A band where improved Christofides loses to Warner/Simmons:
//   pi_{A1,2} = 1/2 -+ (1/2) sqrt(1 - ((N-1)/N) (1-p2)/(1 + p2 d/4)),
//   d = e^eps + e^-eps - 2 = 4 sinh^2(eps/2).
inline Interval RegimeThresholds(std::int64_t n, PrivacyBudget eps,
                                 double p2) {
  if (n < 2) throw InvalidParameter("thresholds require N >= 2");
  if (!(p2 >= 0.0 && p2 < 1.0)) throw InvalidAux("p2 must lie in [0, 1)");
  const double s = std::sinh(eps.value() / 2.0);
  const double d_quarter = s * s;  // p2 d / 4 = p2 sinh^2(eps/2)
  const double nd = static_cast<double>(n);
  const double radicand =
      1.0 - ((nd - 1.0) / nd) * (1.0 - p2) / (1.0 + p2 * d_quarter);
  const double half = 0.5 * std::sqrt(radicand);
  return {0.5 - half, 0.5 + half};
}

// Var_IC / Var_MC at matched minimum-variance designs: 4 N pi(1-pi) / (N-1).
inline double IcMcVarianceRatio(std::int64_t n, double pi_a) {
  internal::CheckVarianceArgs(n, pi_a);
  return 4.0 * static_cast<double>(n) * pi_a * (1.0 - pi_a) /
         static_cast<double>(n - 1);
}

// Families compared by the regime analysis. Warner and Simmons share one
// entry because their minimum variances coincide.
enum class VarianceFamily {
  kWarnerSimmons,
  kChristofides,
  kImprovedChristofides,
};

inline std::string_view VarianceFamilyName(VarianceFamily family) {
  switch (family) {
    case VarianceFamily::kWarnerSimmons:
      return "warner/simmons";
    case VarianceFamily::kChristofides:
      return "christofides";
    case VarianceFamily::kImprovedChristofides:
      return "improved-christofides";
  }
  return "unknown";
}

struct RegimeReport {
  double pi_a1 = 0.0;
  double pi_a2 = 0.0;
  double ic_mc_lo = 0.0;
  double ic_mc_hi = 0.0;

  struct Entry {
    VarianceFamily family;
    double variance;
    // True when this entry's variance equals the previous (smaller-ranked)
    // entry's variance up to rounding; boundary pi_a values tie.
    bool tied_with_previous = false;
  };
  // Ascending by variance.
  std::array<Entry, 3> ordering;
};

// Ranks the three minimum variances by direct evaluation. The interval
// thresholds are carried along for display and cross-checks, not used for
// the ranking itself.
inline RegimeReport ClassifyRegime(double pi_a, std::int64_t n,
                                   PrivacyBudget eps, double p2) {
  if (!(pi_a > 0.0 && pi_a < 1.0)) {
    throw InvalidParameter("regime classification needs pi_a in (0, 1)");
  }
  RegimeReport report;
  const Interval band = RegimeThresholds(n, eps, p2);
  report.pi_a1 = band.lo;
  report.pi_a2 = band.hi;
  const Interval cross = IcMcCrossover(n);
  report.ic_mc_lo = cross.lo;
  report.ic_mc_hi = cross.hi;

  report.ordering = {
      RegimeReport::Entry{
          VarianceFamily::kWarnerSimmons,
          MinVarianceAtEpsilon(MechanismKind::kWarner, eps, n, pi_a, p2)},
      RegimeReport::Entry{VarianceFamily::kChristofides,
                          MinVarianceAtEpsilon(MechanismKind::kChristofides,
                                               eps, n, pi_a, p2)},
      RegimeReport::Entry{
          VarianceFamily::kImprovedChristofides,
          MinVarianceAtEpsilon(MechanismKind::kImprovedChristofides, eps, n,
                               pi_a, p2)},
  };
  std::sort(report.ordering.begin(), report.ordering.end(),
            [](const auto& a, const auto& b) { return a.variance < b.variance; });
  for (std::size_t i = 1; i < report.ordering.size(); ++i) {
    const double a = report.ordering[i - 1].variance;
    const double b = report.ordering[i].variance;
    report.ordering[i].tied_with_previous =
        std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  }
  return report;
}

// Smallest N with MinVarianceAtEpsilon(...) <= var_target. All formulas are
// c/N or c/(N-1), so the closed-form ceiling is verified by direct
// evaluation at N and N-1. For improved Christofides pi_a is required;
// substitute 0.5 for the worst case.
inline std::int64_t MinSampleSize(MechanismKind kind, PrivacyBudget eps,
                                  double var_target, double p2,
                                  std::optional<double> pi_a = std::nullopt) {
  if (!(var_target > 0.0)) {
    throw InvalidParameter("variance target must be positive");
  }
  double pa = 0.0;
  if (kind == MechanismKind::kImprovedChristofides) {
    if (!pi_a.has_value()) {
      throw InvalidParameter(
          "improved christofides sample size needs pi_a (worst case: 0.5)");
    }
    pa = *pi_a;
  }
  const double em1 = std::expm1(eps.value());
  double n_real = 2.0;
  switch (kind) {
    case MechanismKind::kWarner:
    case MechanismKind::kSimmons:
      n_real = std::exp(eps.value()) / (em1 * em1 * var_target);
      break;
    case MechanismKind::kChristofides:
      n_real = internal::DesignBracket(eps.value(), p2) / (4.0 * var_target);
      break;
    case MechanismKind::kImprovedChristofides:
      n_real = 1.0 + pa * (1.0 - pa) *
                         internal::DesignBracket(eps.value(), p2) / var_target;
      break;
  }
  auto n = static_cast<std::int64_t>(std::ceil(n_real - 1e-9));
  n = std::max<std::int64_t>(n, 2);
  const auto value_at = [&](std::int64_t m) {
    return MinVarianceAtEpsilon(kind, eps, m, pa, p2);
  };
  while (n > 2 && value_at(n - 1) <= var_target) --n;
  while (value_at(n) > var_target) ++n;
  return n;
}

}  // namespace rrldp
