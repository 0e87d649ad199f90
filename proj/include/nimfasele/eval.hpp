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

// Per-class precision/recall/F1 and macro-F1 over the three tags.
//
// A class with neither gold support nor predictions scores 1 on all three
// rates and is flagged `vacuous`; any other zero denominator scores 0.

#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nimfasele/align.hpp"
#include "nimfasele/corpus.hpp"
#include "nimfasele/error.hpp"
#include "nimfasele/labeling.hpp"

namespace nimfasele {

using ConfusionMatrix = std::array<std::array<std::uint64_t, kNumTags>, kNumTags>;

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;    // gold count
  std::uint64_t predicted = 0;  // predicted count
  bool vacuous = false;

  bool operator==(const ClassMetrics&) const = default;
};

inline double F1Score(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

// Unweighted mean.
inline double MacroAverage(std::span<const double> scores) {
  if (scores.empty()) return 0.0;
  return std::accumulate(scores.begin(), scores.end(), 0.0) /
         static_cast<double>(scores.size());
}

struct EvalReport {
  ConfusionMatrix confusion{};  // [gold][predicted]
  std::array<ClassMetrics, kNumTags> per_class{};
  double macro_f1 = 0.0;
  std::uint64_t masked_skipped = 0;

  std::uint64_t evaluated() const {
    std::uint64_t n = 0;
    for (const auto& row : confusion) {
      for (std::uint64_t v : row) n += v;
    }
    return n;
  }

  static EvalReport FromConfusion(const ConfusionMatrix& confusion,
                                  std::uint64_t masked_skipped = 0) {
    EvalReport r;
    r.confusion = confusion;
    r.masked_skipped = masked_skipped;
    std::array<double, kNumTags> f1s{};
    for (int c = 0; c < kNumTags; ++c) {
      ClassMetrics& m = r.per_class[c];
      const std::uint64_t tp = confusion[c][c];
      for (int o = 0; o < kNumTags; ++o) {
        m.support += confusion[c][o];
        m.predicted += confusion[o][c];
      }
      if (m.support == 0 && m.predicted == 0) {
        m.precision = m.recall = m.f1 = 1.0;
        m.vacuous = true;
      } else {
        m.precision = m.predicted == 0 ? 0.0 : static_cast<double>(tp) / m.predicted;
        m.recall = m.support == 0 ? 0.0 : static_cast<double>(tp) / m.support;
        m.f1 = F1Score(m.precision, m.recall);
      }
      f1s[c] = m.f1;
    }
    r.macro_f1 = MacroAverage(f1s);
    return r;
  }

  bool operator==(const EvalReport&) const = default;
};

// Sums the confusion counts and recomputes every rate.
inline EvalReport Merge(const EvalReport& a, const EvalReport& b) {
  ConfusionMatrix c{};
  for (int g = 0; g < kNumTags; ++g) {
    for (int p = 0; p < kNumTags; ++p) c[g][p] = a.confusion[g][p] + b.confusion[g][p];
  }
  return EvalReport::FromConfusion(c, a.masked_skipped + b.masked_skipped);
}

// Accumulates into `confusion`; returns the number of masked positions.
inline std::uint64_t AccumulateConfusion(std::span<const Tag> gold, std::span<const Tag> pred,
                                         const std::vector<bool>& mask,
                                         ConfusionMatrix& confusion) {
  if (gold.size() != pred.size() || (!mask.empty() && mask.size() != gold.size())) {
    throw Error(ErrorCode::kInvalidArgument, "gold, prediction and mask lengths differ");
  }
  std::uint64_t skipped = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (!mask.empty() && !mask[i]) {
      ++skipped;
      continue;
    }
    ++confusion[TagIndex(gold[i])][TagIndex(pred[i])];
  }
  return skipped;
}

// An empty mask means every position counts.
inline EvalReport Evaluate(std::span<const Tag> gold, std::span<const Tag> pred,
                           const std::vector<bool>& mask = {}) {
  ConfusionMatrix c{};
  const std::uint64_t skipped = AccumulateConfusion(gold, pred, mask, c);
  return EvalReport::FromConfusion(c, skipped);
}

// The raw side's separators, read as predictions of the gold tags. Throws
// Error(kNotComparable) when the two sides differ outside separators; use
// EvaluateExternal for those.
inline EvalReport ScoreBaseline(const ParallelPair& pair) {
  const SeparatorDecisions raw = ReadSeparatorDecisions(pair.raw);
  const SeparatorDecisions gold = ReadSeparatorDecisions(pair.gold);
  if (raw.chars != gold.chars) {
    throw Error(ErrorCode::kNotComparable,
                "raw and gold differ in non-separator characters");
  }
  return Evaluate(gold.tags, raw.tags);
}

// Scores `corrected` against `gold` after aligning their non-separator
// characters. A column counts only when both sides hold the same character;
// it is then scored by the separator that follows on each side. All other
// columns go to masked_skipped. `original` is the uncorrected input the
// external tool saw; it does not affect the score.
inline EvalReport EvaluateExternal(std::u32string_view original, std::u32string_view corrected,
                                   std::u32string_view gold) {
  static_cast<void>(original);
  const SeparatorDecisions pred = ReadSeparatorDecisions(corrected);
  const SeparatorDecisions ref = ReadSeparatorDecisions(gold);
  const Alignment al = AlignStrings(pred.chars, ref.chars);
  ConfusionMatrix c{};
  std::uint64_t skipped = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  for (std::size_t col = 0; col < al.padded_a.size(); ++col) {
    const char32_t x = al.padded_a[col];
    const char32_t y = al.padded_b[col];
    if (x != kPlaceholder && x == y) {
      ++c[TagIndex(ref.tags[j])][TagIndex(pred.tags[i])];
    } else {
      ++skipped;
    }
    if (x != kPlaceholder) ++i;
    if (y != kPlaceholder) ++j;
  }
  return EvalReport::FromConfusion(c, skipped);
}

namespace detail {

inline std::string Fixed(double v, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace detail

// Human-readable table with the same columns as a results table row: F1 per
// class then the macro average, followed by per-class detail and the
// confusion matrix.
inline std::string FormatTable(const EvalReport& r, std::string_view title = "result") {
  std::string s;
  s += "                 F1(0)   F1(1)   F1(2)   Avg.F1\n";
  char row[160];
  std::snprintf(row, sizeof(row), "%-14.14s  %s  %s  %s  %s\n", std::string(title).c_str(),
                detail::Fixed(r.per_class[0].f1).c_str(), detail::Fixed(r.per_class[1].f1).c_str(),
                detail::Fixed(r.per_class[2].f1).c_str(), detail::Fixed(r.macro_f1).c_str());
  s += row;
  s += "\nclass  precision  recall   f1       support\n";
  for (int c = 0; c < kNumTags; ++c) {
    const ClassMetrics& m = r.per_class[c];
    std::snprintf(row, sizeof(row), "%d      %s     %s   %s   %llu%s\n", c,
                  detail::Fixed(m.precision).c_str(), detail::Fixed(m.recall).c_str(),
                  detail::Fixed(m.f1).c_str(), static_cast<unsigned long long>(m.support),
                  m.vacuous ? "  (absent)" : "");
    s += row;
  }
  s += "\nconfusion (rows gold, columns predicted)\n";
  for (int g = 0; g < kNumTags; ++g) {
    std::snprintf(row, sizeof(row), "%d  %10llu %10llu %10llu\n", g,
                  static_cast<unsigned long long>(r.confusion[g][0]),
                  static_cast<unsigned long long>(r.confusion[g][1]),
                  static_cast<unsigned long long>(r.confusion[g][2]));
    s += row;
  }
  std::snprintf(row, sizeof(row), "evaluated %llu, skipped %llu\n",
                static_cast<unsigned long long>(r.evaluated()),
                static_cast<unsigned long long>(r.masked_skipped));
  s += row;
  return s;
}

// One `key=value` per line.
inline std::string FormatKeyValue(const EvalReport& r) {
  std::string s;
  auto put = [&s](const std::string& k, const std::string& v) { s += k + "=" + v + "\n"; };
  put("evaluated", std::to_string(r.evaluated()));
  put("masked_skipped", std::to_string(r.masked_skipped));
  for (int g = 0; g < kNumTags; ++g) {
    for (int p = 0; p < kNumTags; ++p) {
      put("confusion." + std::to_string(g) + "." + std::to_string(p),
          std::to_string(r.confusion[g][p]));
    }
  }
  for (int c = 0; c < kNumTags; ++c) {
    const ClassMetrics& m = r.per_class[c];
    const std::string k = "class" + std::to_string(c) + ".";
    put(k + "precision", detail::Fixed(m.precision, 6));
    put(k + "recall", detail::Fixed(m.recall, 6));
    put(k + "f1", detail::Fixed(m.f1, 6));
    put(k + "support", std::to_string(m.support));
    put(k + "predicted", std::to_string(m.predicted));
    put(k + "vacuous", m.vacuous ? "1" : "0");
  }
  put("macro_f1", detail::Fixed(r.macro_f1, 6));
  return s;
}

}  // namespace nimfasele
