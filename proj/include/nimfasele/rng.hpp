// Copyright 2026 The Nimfasele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Reproducible per-sentence random streams.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Distributions are implemented here rather than taken from
// <random>, whose distribution algorithms differ between standard libraries.

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace nimfasele {

inline constexpr std::string_view kGeneratorId = "mt19937_64+splitmix64/v1";

constexpr std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class SentenceRng {
 public:
  SentenceRng(std::uint64_t seed, std::uint64_t stream)
      : engine_(SplitMix64(seed ^ SplitMix64(stream))) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform on the open interval (0, 1).
  double OpenUnit() {
    const std::uint64_t k = Next() >> 12;  // 52 bits
    return (static_cast<double>(k) + 0.5) * 0x1.0p-52;
  }

  // Uniform on (0, bound); 0 when bound is 0.
  double OpenInterval(double bound) {
    if (bound <= 0.0) return 0.0;
    double r = bound * OpenUnit();
    if (r >= bound) r = std::nextafter(bound, 0.0);
    return r;
  }

  // Uniform integer in [0, n), n > 0. Rejection keeps it unbiased.
  std::uint64_t Below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = Next();
    } while (x >= limit);
    return x % n;
  }

  bool Coin() { return (Next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nimfasele
