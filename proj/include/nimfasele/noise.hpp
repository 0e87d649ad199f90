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

// Stochastic corruption of clean sentences into realistic noisy inputs.
//
// For a gold sentence of l characters, with per-sentence rates r1, r2, r3
// drawn uniformly from (0, r_max):
//   1. floor(r1 * l) ZWNJs become spaces;
//   2. floor(r2 * l) spaces that follow a non-joining character are deleted;
//   3. floor(r3 * l') of the characters untouched so far are perturbed, l'
//      being the length after steps 1 and 2:
//        space  -> deleted or ZWNJ,
//        ZWNJ   -> deleted or space,
//        other  -> a space or ZWNJ is appended when no separator follows,
//                  otherwise the following separator is deleted.
// Counts are capped by the number of eligible positions. Non-separator
// characters are never altered, so gold tags carry over unchanged.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "nimfasele/charset.hpp"
#include "nimfasele/corpus.hpp"
#include "nimfasele/error.hpp"
#include "nimfasele/labeling.hpp"
#include "nimfasele/rng.hpp"

namespace nimfasele {

struct NoiseConfig {
  double r1_max = 0.15;
  double r2_max = 0.20;
  double r3_max = 0.05;
  std::uint64_t seed = 0;

  void Validate() const {
    for (double r : {r1_max, r2_max, r3_max}) {
      if (!(r >= 0.0 && r <= 1.0)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "noise rate bounds must lie in [0, 1]");
      }
    }
  }
};

struct NoiseRates {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
};

struct NoiseDraw {
  NoiseRates rates;
  // Steps 1 and 2 index into the gold sentence; step 3 indexes into the
  // sentence as it stood after step 2. Listed in the order applied.
  std::vector<std::size_t> step1;
  std::vector<std::size_t> step2;
  std::vector<std::size_t> step3;
};

struct NoisyResult {
  std::u32string noisy;
  Sample sample;
  NoiseDraw draw;
};

namespace detail {

struct NoiseCell {
  char32_t c;
  std::size_t origin;  // index in the string the current step started from
  bool modified = false;
  bool deleted = false;
  char32_t appended = 0;
};

inline std::size_t RateCount(double rate, std::size_t length) {
  return static_cast<std::size_t>(std::floor(rate * static_cast<double>(length)));
}

// Moves `k` uniformly chosen members of `pool` to its front, in draw order.
inline void PartialShuffle(std::vector<std::size_t>& pool, std::size_t k,
                           SentenceRng& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.Below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
}

}  // namespace detail

// Applies the three steps with fixed rates. `gold` must satisfy the Corpus
// sentence invariants.
inline NoisyResult ApplyNoise(std::u32string_view gold, const NoiseRates& rates,
                              SentenceRng& rng) {
  const TaggedSentence encoded = EncodeStripped(gold);
  const std::size_t l = gold.size();
  NoisyResult out;
  out.draw.rates = rates;

  std::vector<detail::NoiseCell> cells;
  cells.reserve(l);
  for (std::size_t i = 0; i < l; ++i) cells.push_back({gold[i], i});

  // Step 1: ZWNJ -> space.
  {
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < l; ++i) {
      if (cells[i].c == kZwnj) pool.push_back(i);
    }
    detail::PartialShuffle(
        pool, std::min(detail::RateCount(rates.r1, l), pool.size()), rng);
    for (std::size_t i : pool) {
      cells[i].c = kSpace;
      cells[i].modified = true;
    }
    out.draw.step1 = std::move(pool);
  }

  // Step 2: drop spaces after non-joining characters.
  {
    std::vector<std::size_t> pool;
    for (std::size_t i = 1; i < l; ++i) {
      if (cells[i].c == kSpace && !cells[i].modified &&
          !IsSeparator(cells[i - 1].c) && !IsJoiner(cells[i - 1].c)) {
        pool.push_back(i);
      }
    }
    detail::PartialShuffle(
        pool, std::min(detail::RateCount(rates.r2, l), pool.size()), rng);
    for (std::size_t i : pool) {
      cells[i].deleted = true;
      cells[i].modified = true;
    }
    out.draw.step2 = std::move(pool);
  }

  std::erase_if(cells, [](const detail::NoiseCell& cell) { return cell.deleted; });
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i].origin = i;

  // Step 3: perturb untouched characters.
  {
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!cells[i].modified) pool.push_back(i);
    }
    detail::PartialShuffle(
        pool,
        std::min(detail::RateCount(rates.r3, cells.size()), pool.size()), rng);
    for (std::size_t i : pool) {
      detail::NoiseCell& cell = cells[i];
      if (cell.deleted) continue;  // removed as an earlier pick's follower
      const bool coin = rng.Coin();
      if (cell.c == kSpace) {
        if (coin) cell.c = kZwnj;
        else cell.deleted = true;
      } else if (cell.c == kZwnj) {
        if (coin) cell.c = kSpace;
        else cell.deleted = true;
      } else {
        std::size_t next = i + 1;
        while (next < cells.size() && cells[next].deleted) ++next;
        if (next < cells.size() && IsSeparator(cells[next].c)) {
          cells[next].deleted = true;
          cells[next].modified = true;
        } else {
          cell.appended = coin ? kSpace : kZwnj;
        }
      }
      cell.modified = true;
    }
    out.draw.step3 = std::move(pool);
  }

  out.noisy.reserve(cells.size() + out.draw.step3.size());
  for (const auto& cell : cells) {
    if (cell.deleted) continue;
    out.noisy.push_back(cell.c);
    if (cell.appended != 0) out.noisy.push_back(cell.appended);
  }
  out.sample = EncodeRetained(out.noisy, encoded.tags);
  return out;
}

inline NoiseRates DrawRates(const NoiseConfig& cfg, SentenceRng& rng) {
  NoiseRates r;
  r.r1 = rng.OpenInterval(cfg.r1_max);
  r.r2 = rng.OpenInterval(cfg.r2_max);
  r.r3 = rng.OpenInterval(cfg.r3_max);
  return r;
}

// Deterministic in (cfg.seed, sentence_index, gold).
inline NoisyResult InjectNoise(std::u32string_view gold, const NoiseConfig& cfg,
                               std::uint64_t sentence_index) {
  cfg.Validate();
  SentenceRng rng(cfg.seed, sentence_index);
  const NoiseRates rates = DrawRates(cfg, rng);
  return ApplyNoise(gold, rates, rng);
}

// One result per sentence, sentence_index = index_offset + position.
inline std::vector<NoisyResult> BuildNoisyResults(const Corpus& corpus,
                                                  const NoiseConfig& cfg,
                                                  std::uint64_t index_offset = 0) {
  cfg.Validate();
  std::vector<NoisyResult> out;
  out.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    out.push_back(InjectNoise(corpus.sentences[i], cfg, index_offset + i));
  }
  return out;
}

inline std::vector<Sample> BuildNoisyDataset(const Corpus& corpus,
                                             const NoiseConfig& cfg,
                                             std::uint64_t index_offset = 0) {
  std::vector<Sample> out;
  out.reserve(corpus.size());
  for (auto& r : BuildNoisyResults(corpus, cfg, index_offset)) {
    out.push_back(std::move(r.sample));
  }
  return out;
}

}  // namespace nimfasele
