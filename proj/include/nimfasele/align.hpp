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

// Ratcliff/Obershelp string alignment: take the longest common block
// (leftmost in `a`, then leftmost in `b`, on ties), recurse on both sides,
// then pad the unmatched stretches with a placeholder so that both padded
// sequences have the same length.

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace nimfasele {

// Not a Unicode scalar value, so it cannot occur in decoded text.
inline constexpr char32_t kPlaceholder = 0x110000;

struct MatchingBlock {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t size = 0;

  bool operator==(const MatchingBlock&) const = default;
};

struct Alignment {
  std::u32string padded_a;
  std::u32string padded_b;
  std::vector<MatchingBlock> blocks;  // sorted, adjacent blocks merged
};

namespace detail {

inline MatchingBlock LongestMatch(std::u32string_view a, std::u32string_view b,
                                  std::size_t alo, std::size_t ahi, std::size_t blo,
                                  std::size_t bhi) {
  MatchingBlock best{alo, blo, 0};
  // run[j + 1] = length of the common suffix ending at a[i], b[j].
  std::vector<std::size_t> run(bhi - blo + 1, 0), next(bhi - blo + 1, 0);
  for (std::size_t i = alo; i < ahi; ++i) {
    for (std::size_t j = blo; j < bhi; ++j) {
      const std::size_t k = a[i] == b[j] ? run[j - blo] + 1 : 0;
      next[j - blo + 1] = k;
      if (k > best.size) best = {i + 1 - k, j + 1 - k, k};
    }
    std::swap(run, next);
  }
  return best;
}

inline void CollectBlocks(std::u32string_view a, std::u32string_view b, std::size_t alo,
                          std::size_t ahi, std::size_t blo, std::size_t bhi,
                          std::vector<MatchingBlock>& out) {
  if (alo >= ahi || blo >= bhi) return;
  const MatchingBlock m = LongestMatch(a, b, alo, ahi, blo, bhi);
  if (m.size == 0) return;
  CollectBlocks(a, b, alo, m.a, blo, m.b, out);
  out.push_back(m);
  CollectBlocks(a, b, m.a + m.size, ahi, m.b + m.size, bhi, out);
}

}  // namespace detail

inline std::vector<MatchingBlock> MatchingBlocks(std::u32string_view a, std::u32string_view b) {
  std::vector<MatchingBlock> raw;
  detail::CollectBlocks(a, b, 0, a.size(), 0, b.size(), raw);
  std::vector<MatchingBlock> merged;
  for (const MatchingBlock& m : raw) {
    if (!merged.empty() && merged.back().a + merged.back().size == m.a &&
        merged.back().b + merged.back().size == m.b) {
      merged.back().size += m.size;
    } else {
      merged.push_back(m);
    }
  }
  return merged;
}

inline Alignment AlignStrings(std::u32string_view a, std::u32string_view b) {
  Alignment out;
  out.blocks = MatchingBlocks(a, b);
  std::size_t i = 0;
  std::size_t j = 0;
  auto pad_gap = [&](std::size_t i_end, std::size_t j_end) {
    const std::size_t p = i_end - i;
    const std::size_t q = j_end - j;
    for (std::size_t t = 0; t < std::max(p, q); ++t) {
      out.padded_a.push_back(t < p ? a[i + t] : kPlaceholder);
      out.padded_b.push_back(t < q ? b[j + t] : kPlaceholder);
    }
    i = i_end;
    j = j_end;
  };
  for (const MatchingBlock& m : out.blocks) {
    pad_gap(m.a, m.b);
    out.padded_a.append(a.substr(m.a, m.size));
    out.padded_b.append(b.substr(m.b, m.size));
    i += m.size;
    j += m.size;
  }
  pad_gap(a.size(), b.size());
  return out;
}

inline std::u32string RemovePlaceholders(std::u32string_view padded) {
  std::u32string out;
  for (char32_t c : padded) {
    if (c != kPlaceholder) out.push_back(c);
  }
  return out;
}

}  // namespace nimfasele
