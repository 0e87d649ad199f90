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

// Test-only oracles. Nothing here calls the lattice, forward-backward or
// Viterbi code; scores are rebuilt from feature strings and model weights.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "nimfasele/nimfasele.hpp"

namespace nimfasele::testing {

// Score of a full tag path over the unmasked positions of `symbols`,
// computed straight from feature strings.
inline double OracleScore(const crf::CrfModel& model, const std::u32string& symbols,
                          const std::vector<bool>& mask, const std::vector<int>& path) {
  double s = 0.0;
  int prev = -1;
  std::size_t k = 0;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (!mask.empty() && !mask[i]) continue;
    const int y = path[k++];
    for (const std::string& f : crf::ExtractFeatures(symbols, i, model.feature_template())) {
      if (auto id = model.vocab().Find(f)) s += model.state_weight(*id, TagFromIndex(y));
    }
    if (prev >= 0) s += model.transition_weight(TagFromIndex(prev), TagFromIndex(y));
    prev = y;
  }
  return s;
}

// Visits every path of length m in lexicographic order (position 0 most
// significant).
template <typename Fn>
void ForEachPath(std::size_t m, Fn&& fn) {
  std::vector<int> path(m, 0);
  while (true) {
    fn(path);
    std::size_t k = m;
    while (k > 0) {
      --k;
      if (++path[k] < kNumTags) break;
      path[k] = 0;
      if (k == 0) return;
    }
    if (m == 0) return;
  }
}

inline std::size_t ChainLength(const std::u32string& symbols, const std::vector<bool>& mask) {
  if (mask.empty()) return symbols.size();
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
}

// log sum over all paths of exp(score).
inline double BruteLogPartition(const crf::CrfModel& model, const std::u32string& symbols,
                                const std::vector<bool>& mask = {}) {
  std::vector<double> scores;
  ForEachPath(ChainLength(symbols, mask), [&](const std::vector<int>& p) {
    scores.push_back(OracleScore(model, symbols, mask, p));
  });
  const double m = *std::max_element(scores.begin(), scores.end());
  double s = 0.0;
  for (double x : scores) s += std::exp(x - m);
  return m + std::log(s);
}

inline std::vector<int> BruteArgmax(const crf::CrfModel& model, const std::u32string& symbols) {
  std::vector<int> best;
  double best_score = -std::numeric_limits<double>::infinity();
  ForEachPath(symbols.size(), [&](const std::vector<int>& p) {
    const double s = OracleScore(model, symbols, {}, p);
    if (s > best_score) {
      best_score = s;
      best = p;
    }
  });
  return best;
}

// Sum of log p(gold) minus the elastic-net penalty, by enumeration.
inline double BruteObjective(const crf::CrfModel& model, const std::vector<Sample>& batch,
                             double c1, double c2) {
  double obj = 0.0;
  for (const Sample& s : batch) {
    std::vector<int> gold;
    for (std::size_t i = 0; i < s.symbols.size(); ++i) {
      if (s.mask[i]) gold.push_back(TagIndex(s.tags[i]));
    }
    if (gold.empty()) continue;
    obj += OracleScore(model, s.symbols, s.mask, gold) -
           BruteLogPartition(model, s.symbols, s.mask);
  }
  for (double w : model.params()) obj -= c1 * std::abs(w) + c2 * w * w;
  return obj;
}

// A model whose vocabulary covers every feature of `texts`, with weights
// drawn from N(0, scale^2), pushed away from zero so the L1 term stays
// differentiable.
inline crf::CrfModel RandomModel(const std::vector<std::u32string>& texts, std::mt19937_64& rng,
                                 double scale = 1.0,
                                 crf::InputMode mode = crf::InputMode::kStripped) {
  crf::FeatureTemplate tmpl;
  crf::FeatureVocab vocab;
  for (const auto& t : texts) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (auto& f : crf::ExtractFeatures(t, i, tmpl)) vocab.Add(f);
    }
  }
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<double> w(crf::ParamLayout{vocab.size()}.size());
  for (double& v : w) {
    v = normal(rng);
    if (std::abs(v) < 1e-2) v = v < 0 ? -1e-2 : 1e-2;
  }
  return crf::CrfModel(tmpl, mode, std::move(vocab), std::move(w));
}

inline std::u32string RandomText(std::mt19937_64& rng, std::size_t n,
                                 const std::u32string& alphabet) {
  std::u32string s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(alphabet[rng() % alphabet.size()]);
  return s;
}

inline std::vector<Tag> RandomTags(std::mt19937_64& rng, std::size_t n) {
  std::vector<Tag> t(n);
  for (auto& x : t) x = TagFromIndex(static_cast<int>(rng() % kNumTags));
  return t;
}

// Persian-ish letters, a non-joiner, a digit and a Latin letter.
inline const std::u32string kSentenceAlphabet =
    U"بتسکمیندراو۳a";

// A random sentence satisfying the Corpus invariants.
inline std::u32string RandomGoldSentence(std::mt19937_64& rng, std::size_t max_words = 6) {
  const std::size_t words = 1 + rng() % max_words;
  std::u32string s;
  for (std::size_t w = 0; w < words; ++w) {
    if (w > 0) s.push_back(kSpace);
    const std::size_t parts = 1 + rng() % 2;
    for (std::size_t p = 0; p < parts; ++p) {
      if (p > 0) s.push_back(kZwnj);
      s += RandomText(rng, 1 + rng() % 5, kSentenceAlphabet);
    }
  }
  return s;
}

// Any code points, including separators, controls and astral ones.
inline std::u32string RandomUnicode(std::mt19937_64& rng, std::size_t max_len) {
  static const char32_t kInteresting[] = {
      kSpace, kZwnj, 0x200D, 0x200B, 0x064A, 0x0643, 0x0649, 0x0623, 0x06CC,
      0x06A9, 0x0640, 0x0660, 0x06F0, 0xFEFF, 0x202B, 0x0627, U'a', U'\t'};
  std::u32string s;
  const std::size_t n = rng() % (max_len + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto pick = rng() % 4;
    if (pick < 2) {
      s.push_back(kInteresting[rng() % std::size(kInteresting)]);
    } else if (pick == 2) {
      s.push_back(static_cast<char32_t>(0x0600 + rng() % 0x100));
    } else {
      char32_t c;
      do {
        c = static_cast<char32_t>(rng() % 0x110000);
      } while (c >= 0xD800 && c <= 0xDFFF);
      s.push_back(c);
    }
  }
  return s;
}

// Synthetic corpus with deterministic separator rules:
//  * nouns are 2-4 dual-joining letters ending in the non-joiner dal and are
//    followed by a space;
//  * verbs are the prefix "mi" (meem, yeh), a ZWNJ, then a stem, and are
//    followed by a space;
//  * meem-yeh occurs nowhere else.
inline std::u32string SyntheticSentence(std::mt19937_64& rng) {
  static const std::u32string kStemLetters =
      U"بتسشکلنفقهگع";
  static const std::u32string kVerbStems[] = {
      U"کنم",        // konam
      U"خورم",  // xoram
      U"بینم",  // binam
      U"گیرم",  // giram
      U"روم",        // ravam
      U"زنم",        // zanam
  };
  const std::size_t words = 1 + rng() % 6;
  std::u32string s;
  for (std::size_t w = 0; w < words; ++w) {
    if (w > 0) s.push_back(kSpace);
    if (rng() % 3 == 0) {
      s += U"می";
      s.push_back(kZwnj);
      s += kVerbStems[rng() % std::size(kVerbStems)];
    } else {
      s += RandomText(rng, 2 + rng() % 3, kStemLetters);
      s.push_back(U'د');
    }
  }
  return s;
}

inline Corpus SyntheticCorpus(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Corpus c;
  c.provenance = "synthetic";
  for (std::size_t i = 0; i < n; ++i) c.sentences.push_back(SyntheticSentence(rng));
  return c;
}

inline std::vector<Sample> StrippedSamples(const Corpus& c) {
  std::vector<Sample> out;
  for (const auto& s : c.sentences) out.push_back(ToSample(EncodeStripped(s)));
  return out;
}

// Longest common subsequence length, by dynamic programming.
inline std::size_t LcsLength(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = a[i - 1] == b[j - 1] ? d[i - 1][j - 1] + 1 : std::max(d[i - 1][j], d[i][j - 1]);
    }
  }
  return d[a.size()][b.size()];
}

}  // namespace nimfasele::testing
