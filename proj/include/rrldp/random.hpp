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
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <random>

namespace rrldp {

// splitmix64 finalizer. Bijective on 64-bit words, used to spread seeds.
inline std::uint64_t MixBits(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

inline std::uint64_t MixSeed(std::uint64_t base, std::uint64_t salt) {
  return MixBits(base + 0x9E3779B97F4A7C15ULL * (salt + 1));
}

// Stable derivation of a per-replicate seed from (master seed, cell index,
// replicate index). The result depends only on the three arguments, never on
// execution order, which is what makes parallel simulation reproducible.
inline std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t stream,
                                std::uint64_t index) {
  return MixSeed(MixSeed(master, stream), index);
}

// Anything that can hand out uniform variates. Mechanisms are templated on
// this so tests can inject scripted sources.
template <typename T>
concept UniformSource = requires(T t, std::size_t n) {
  { t.NextUnit() } -> std::convertible_to<double>;
  { t.NextIndex(n) } -> std::convertible_to<std::size_t>;
};

// Deterministic uniform stream. Identical seed => identical draw sequence,
// byte for byte, on every platform (mt19937_64 is fully specified and the
// unit draw uses the top 53 bits directly).
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(MixBits(seed)) {}

  // Uniform double in [0, 1) with 53 random bits. Consumes one engine step.
  double NextUnit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform index in [0, n). Consumes exactly one engine step; the
  // truncation bias is below 2^-53 * n and irrelevant for survey use.
  std::size_t NextIndex(std::size_t n) {
    assert(n > 0);
    const auto i = static_cast<std::size_t>(NextUnit() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  std::uint64_t NextRaw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

static_assert(UniformSource<RandomSource>);

}  // namespace rrldp
