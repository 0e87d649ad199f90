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

// Corpus ingestion, deterministic splitting and counting.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nimfasele/charset.hpp"
#include "nimfasele/error.hpp"
#include "nimfasele/labeling.hpp"
#include "nimfasele/utf8.hpp"

namespace nimfasele {

// Gold sentences: normalized, single separators, none at either end.
struct Corpus {
  std::vector<std::u32string> sentences;
  std::string provenance;

  std::size_t size() const { return sentences.size(); }
  bool empty() const { return sentences.empty(); }
};

enum class CorpusFormat {
  // One sentence per line, tokens separated by single spaces.
  kPlain,
  // `token<TAB>tag` per line, blank line between sentences. Tags are ignored
  // and spaces inside a token become ZWNJs.
  kTwoColumn,
};

struct LoadOptions {
  CorpusFormat format = CorpusFormat::kPlain;
  const CharClassTable* table = nullptr;  // null: the builtin table
  std::string provenance;
};

struct LoadedCorpus {
  Corpus corpus;
  std::size_t skipped_empty = 0;
};

namespace detail {

inline void StripCr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

inline std::u32string NormalizeToken(const CharClassTable& table,
                                     std::u32string_view token) {
  std::u32string t = table.Normalize(token);
  for (char32_t& c : t) {
    if (c == kSpace) c = kZwnj;
  }
  return TrimSeparators(table.Normalize(t));
}

}  // namespace detail

inline LoadedCorpus LoadTokenizedCorpus(std::istream& in,
                                        const LoadOptions& options = {}) {
  const CharClassTable& table =
      options.table != nullptr ? *options.table : CharClassTable::Builtin();
  LoadedCorpus out;
  out.corpus.provenance = options.provenance;
  std::string line;
  std::size_t line_no = 0;

  if (options.format == CorpusFormat::kPlain) {
    while (std::getline(in, line)) {
      ++line_no;
      detail::StripCr(line);
      std::u32string s = TrimSeparators(table.Normalize(utf8::Decode(line, line_no)));
      if (s.empty()) {
        ++out.skipped_empty;
        continue;
      }
      out.corpus.sentences.push_back(std::move(s));
    }
    return out;
  }

  std::u32string sentence;
  bool saw_token_line = false;
  auto flush = [&]() {
    if (!sentence.empty()) {
      out.corpus.sentences.push_back(std::move(sentence));
    } else if (saw_token_line) {
      ++out.skipped_empty;
    }
    sentence.clear();
    saw_token_line = false;
  };
  while (std::getline(in, line)) {
    ++line_no;
    detail::StripCr(line);
    if (line.empty()) {
      flush();
      continue;
    }
    saw_token_line = true;
    const std::string_view field =
        std::string_view(line).substr(0, line.find('\t'));
    std::u32string token =
        detail::NormalizeToken(table, utf8::Decode(field, line_no));
    if (token.empty()) continue;
    if (!sentence.empty()) sentence.push_back(kSpace);
    sentence += token;
  }
  flush();
  return out;
}

struct SplitSpec {
  double test_fraction = 0.10;
  double valid_fraction = 0.10;
};

struct CorpusSplit {
  Corpus test;
  Corpus valid;
  Corpus train;
};

// Counts for a split of `n` sentences: floor(fraction * n). A 1e-9 slack
// keeps decimal fractions such as 0.29 * 100 from flooring one short.
inline std::size_t SplitCount(double fraction, std::size_t n) {
  return static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(n) + 1e-9));
}

inline void ValidateSplitSpec(const SplitSpec& spec) {
  if (!(spec.test_fraction >= 0.0) || !(spec.valid_fraction >= 0.0) ||
      !(spec.test_fraction + spec.valid_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "split fractions must be non-negative and sum to less than 1");
  }
}

// test = first block, valid = second block, train = the rest; sentence order
// is preserved.
inline CorpusSplit SplitCorpus(const Corpus& corpus, const SplitSpec& spec = {}) {
  ValidateSplitSpec(spec);
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "cannot split an empty corpus");
  }
  const std::size_t n = corpus.size();
  const std::size_t n_test = SplitCount(spec.test_fraction, n);
  const std::size_t n_valid = SplitCount(spec.valid_fraction, n);
  const auto begin = corpus.sentences.begin();
  CorpusSplit out;
  out.test.sentences.assign(begin, begin + n_test);
  out.valid.sentences.assign(begin + n_test, begin + n_test + n_valid);
  out.train.sentences.assign(begin + n_test + n_valid, corpus.sentences.end());
  out.test.provenance = corpus.provenance + "#test";
  out.valid.provenance = corpus.provenance + "#valid";
  out.train.provenance = corpus.provenance + "#train";
  return out;
}

struct ParallelPair {
  std::u32string raw;   // as found, normalized only
  std::u32string gold;  // satisfies the Corpus sentence invariants
};

struct ParallelOptions {
  const CharClassTable* table = nullptr;
  // Reject pairs whose non-separator characters differ.
  bool strict = false;
};

inline std::u32string StripSeparators(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  for (char32_t c : text) {
    if (!IsSeparator(c)) out.push_back(c);
  }
  return out;
}

// One `raw<TAB>gold` pair per line.
inline std::vector<ParallelPair> LoadParallel(std::istream& in,
                                              const ParallelOptions& options = {}) {
  const CharClassTable& table =
      options.table != nullptr ? *options.table : CharClassTable::Builtin();
  std::vector<ParallelPair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    detail::StripCr(line);
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::kFormat, "expected raw<TAB>gold", line_no);
    }
    const std::string_view view(line);
    ParallelPair p;
    p.raw = table.Normalize(utf8::Decode(view.substr(0, tab), line_no));
    p.gold = TrimSeparators(
        table.Normalize(utf8::Decode(view.substr(tab + 1), line_no)));
    if (options.strict && StripSeparators(p.raw) != StripSeparators(p.gold)) {
      throw Error(ErrorCode::kFormat,
                  "raw and gold differ in non-separator characters", line_no);
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

enum class CharCount { kIncludeSeparators, kExcludeSeparators };

struct CorpusStats {
  std::uint64_t words = 0;
  std::uint64_t characters = 0;

  bool operator==(const CorpusStats&) const = default;
};

inline CorpusStats ComputeStats(const Corpus& corpus,
                                CharCount convention = CharCount::kIncludeSeparators) {
  CorpusStats stats;
  for (const std::u32string& s : corpus.sentences) {
    bool in_word = false;
    for (char32_t c : s) {
      if (c == kSpace) {
        in_word = false;
      } else if (!in_word) {
        ++stats.words;
        in_word = true;
      }
      if (convention == CharCount::kIncludeSeparators || !IsSeparator(c)) {
        ++stats.characters;
      }
    }
  }
  return stats;
}

}  // namespace nimfasele
