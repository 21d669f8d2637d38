/*
 * Copyright 2026 The Blindfold Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace blindfold {

/// One SplitMix64 step. Spreads low-entropy user seeds before they reach pcg32.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// pcg32 (PCG-XSH-RR 64/32). Fully specified here so fold assignment and
/// synthetic data are bit-identical on every platform and word order;
/// the run report names this generator.
class Pcg32 {
 public:
  static constexpr std::uint64_t kDefaultStream = 0xda3e39cb94b95bdbULL;

  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = kDefaultStream)
      : state_(0), inc_((stream << 1u) | 1u) {
    next();
    state_ += seed;
    next();
  }

  std::uint32_t next() {
    std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
  }

  /// Unbiased integer in [0, bound). bound must be >= 1.
  std::uint32_t uniform_below(std::uint32_t bound) {
    std::uint32_t threshold = (-bound) % bound;
    for (;;) {
      std::uint32_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// 53-bit uniform double in [0, 1).
  double next_double() {
    std::uint64_t hi = static_cast<std::uint64_t>(next() >> 5);   // 27 bits
    std::uint64_t lo = static_cast<std::uint64_t>(next() >> 6);   // 26 bits
    return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (two uniform draws per value).
  double next_normal() {
    double u1 = 1.0 - next_double();  // (0, 1]
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::uint64_t state_;
  std::uint64_t inc_;
};

inline constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = kFnvOffset) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

/// Per-cell seed: fnv1a64(le64(run_seed) || blind || 0x1f || target).
/// Makes every cell's randomness independent of execution order; the
/// baseline (no blinded column) rows pass blind = "".
inline std::uint64_t cell_seed(std::uint64_t run_seed, std::string_view blind,
                               std::string_view target) {
  char le[8];
  for (int i = 0; i < 8; ++i) le[i] = static_cast<char>((run_seed >> (8 * i)) & 0xff);
  std::uint64_t h = fnv1a64(std::string_view(le, 8));
  h = fnv1a64(blind, h);
  h = fnv1a64(std::string_view("\x1f", 1), h);
  return fnv1a64(target, h);
}

/// Fisher-Yates, driven exclusively by Pcg32::uniform_below.
template <typename T>
void deterministic_shuffle(std::vector<T>& v, Pcg32& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = rng.uniform_below(static_cast<std::uint32_t>(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace blindfold
