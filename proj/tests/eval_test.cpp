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

#include <algorithm>
#include <array>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "nimfasele/nimfasele.hpp"
#include "support/oracles.hpp"

namespace nimfasele {
namespace {

constexpr char32_t kGap = kPlaceholder;

std::vector<Tag> Tags(std::initializer_list<int> v) {
  std::vector<Tag> out;
  for (int x : v) out.push_back(TagFromIndex(x));
  return out;
}

TEST(MacroF1Test, PublishedRowsAverage) {
  struct Row {
    std::array<double, 3> f1;
    double avg;
  };
  const Row rows[] = {
      {{0.9823, 0.9336, 0.5697}, 0.8285},
      {{0.8923, 0.6369, 0.5664}, 0.6985},
      {{0.9963, 0.9886, 0.9593}, 0.9814},
  };
  for (const Row& r : rows) {
    EXPECT_NEAR(MacroAverage(r.f1), r.avg, 0.00005);
  }
}

TEST(MacroF1Test, HandComputedConfusion) {
  // gold:  0 0 1 1 2 0
  // pred:  0 1 1 0 2 0
  const EvalReport r = Evaluate(Tags({0, 0, 1, 1, 2, 0}), Tags({0, 1, 1, 0, 2, 0}));
  EXPECT_EQ(r.evaluated(), 6u);
  EXPECT_DOUBLE_EQ(r.per_class[0].precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.per_class[0].recall, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.per_class[1].precision, 0.5);
  EXPECT_DOUBLE_EQ(r.per_class[1].recall, 0.5);
  EXPECT_DOUBLE_EQ(r.per_class[2].f1, 1.0);
  EXPECT_DOUBLE_EQ(r.macro_f1, (2.0 / 3.0 + 0.5 + 1.0) / 3.0);
}

TEST(MacroF1Test, PerfectPredictions) {
  const auto g = Tags({0, 1, 2, 0, 0});
  const EvalReport r = Evaluate(g, g);
  for (const auto& m : r.per_class) EXPECT_EQ(m.f1, 1.0);
  EXPECT_EQ(r.macro_f1, 1.0);
}

TEST(MacroF1Test, AbsentClassIsVacuousAndFlagged) {
  const auto g = Tags({0, 1, 0});
  const EvalReport r = Evaluate(g, g);
  EXPECT_TRUE(r.per_class[2].vacuous);
  EXPECT_EQ(r.per_class[2].f1, 1.0);
  EXPECT_FALSE(r.per_class[0].vacuous);
  EXPECT_EQ(r.macro_f1, 1.0);

  // Predicted but never gold: a real zero, not vacuous.
  const EvalReport wrong = Evaluate(Tags({0, 0}), Tags({0, 2}));
  EXPECT_FALSE(wrong.per_class[2].vacuous);
  EXPECT_EQ(wrong.per_class[2].f1, 0.0);
}

TEST(MacroF1Test, InvariantUnderPositionPermutation) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    auto g = testing::RandomTags(rng, n);
    auto p = testing::RandomTags(rng, n);
    const EvalReport before = Evaluate(g, p);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Tag> g2(n), p2(n);
    for (std::size_t i = 0; i < n; ++i) {
      g2[i] = g[perm[i]];
      p2[i] = p[perm[i]];
    }
    ASSERT_EQ(Evaluate(g2, p2), before);
  }
}

TEST(MacroF1Test, MergeEqualsConcatenation) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 20;
    const std::size_t m = 1 + rng() % 20;
    auto g1 = testing::RandomTags(rng, n), p1 = testing::RandomTags(rng, n);
    auto g2 = testing::RandomTags(rng, m), p2 = testing::RandomTags(rng, m);
    std::vector<Tag> g = g1, p = p1;
    g.insert(g.end(), g2.begin(), g2.end());
    p.insert(p.end(), p2.begin(), p2.end());
    ASSERT_EQ(Merge(Evaluate(g1, p1), Evaluate(g2, p2)), Evaluate(g, p));
  }
}

TEST(MacroF1Test, MaskedPositionsAreSkipped) {
  const std::vector<bool> mask = {true, false, true};
  const EvalReport r = Evaluate(Tags({0, 1, 2}), Tags({0, 0, 2}), mask);
  EXPECT_EQ(r.masked_skipped, 1u);
  EXPECT_EQ(r.evaluated(), 2u);
  EXPECT_EQ(r.macro_f1, 1.0);
  EXPECT_THROW(Evaluate(Tags({0}), Tags({0, 1})), Error);
}

TEST(BaselineTest, MissingZwnjIsOneFalseNegative) {
  const std::u32string gold = U"می\u200Cکنم";
  const EvalReport r = ScoreBaseline({U"میکنم", gold});
  EXPECT_EQ(r.confusion[2][0], 1u);
  EXPECT_EQ(r.confusion[0][0], 4u);
  EXPECT_EQ(r.per_class[2].recall, 0.0);
  EXPECT_TRUE(r.per_class[1].vacuous);
}

TEST(BaselineTest, IdenticalSidesArePerfect) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto s = testing::RandomGoldSentence(rng);
    ASSERT_EQ(ScoreBaseline({s, s}).macro_f1, 1.0);
  }
}

TEST(BaselineTest, SeparatorRunsAndEdgesReadLeniently) {
  // Leading separator dropped, double space read as one space.
  const EvalReport r = ScoreBaseline({U" ab  cd", U"ab cd"});
  EXPECT_EQ(r.macro_f1, 1.0);
  EXPECT_EQ(r.evaluated(), 4u);
}

TEST(BaselineTest, DifferentLettersAreNotComparable) {
  try {
    ScoreBaseline({U"abx", U"ab"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotComparable);
  }
}

TEST(AlignTest, InsertedLetterBecomesPlaceholder) {
  const Alignment al = AlignStrings(U"ab", U"acb");
  EXPECT_EQ(al.padded_a, (std::u32string{U'a', kGap, U'b'}));
  EXPECT_EQ(al.padded_b, U"acb");
}

TEST(AlignTest, EmptySide) {
  const Alignment al = AlignStrings(U"", U"xy");
  EXPECT_EQ(al.padded_a, (std::u32string{kGap, kGap}));
  EXPECT_EQ(al.padded_b, U"xy");
  EXPECT_TRUE(al.blocks.empty());
  const Alignment none = AlignStrings(U"", U"");
  EXPECT_TRUE(none.padded_a.empty());
}

TEST(AlignTest, IdenticalStringsAreOneBlock) {
  const Alignment al = AlignStrings(U"abc", U"abc");
  ASSERT_EQ(al.blocks.size(), 1u);
  EXPECT_EQ(al.blocks[0], (MatchingBlock{0, 0, 3}));
  EXPECT_EQ(al.padded_a, U"abc");
}

TEST(AlignTest, SubstitutionSharesAColumn) {
  const Alignment al = AlignStrings(U"axc", U"ayc");
  EXPECT_EQ(al.padded_a, U"axc");
  EXPECT_EQ(al.padded_b, U"ayc");
}

TEST(AlignTest, LeftmostLongestMatchWins) {
  // "ab" occurs twice in b; the first occurrence is taken.
  const auto blocks = MatchingBlocks(U"ab", U"abab");
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0], (MatchingBlock{0, 0, 2}));
}

TEST(AlignTest, FuzzedRoundTripAndBounds) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto a = testing::RandomText(rng, rng() % 12, U"abcd");
    const auto b = testing::RandomText(rng, rng() % 12, U"abcd");
    const Alignment al = AlignStrings(a, b);
    ASSERT_EQ(al.padded_a.size(), al.padded_b.size());
    ASSERT_EQ(RemovePlaceholders(al.padded_a), a);
    ASSERT_EQ(RemovePlaceholders(al.padded_b), b);
    std::size_t equal_columns = 0;
    for (std::size_t k = 0; k < al.padded_a.size(); ++k) {
      ASSERT_FALSE(al.padded_a[k] == kGap && al.padded_b[k] == kGap);
      if (al.padded_a[k] != kGap && al.padded_a[k] == al.padded_b[k]) ++equal_columns;
    }
    std::size_t matched = 0;
    for (const auto& m : al.blocks) matched += m.size;
    ASSERT_EQ(equal_columns, matched);
    ASSERT_LE(matched, testing::LcsLength(a, b));
  }
}

TEST(AlignTest, MatchesReferenceBlocks) {
  // Recorded from Python's difflib.SequenceMatcher(autojunk=False).
  struct Case {
    std::u32string a;
    std::u32string b;
    std::vector<MatchingBlock> blocks;
  };
  const std::vector<Case> cases = {
      {U"abcaa", U"abcacaaa", {{0, 0, 4}, {4, 5, 1}}},
      {U"baaacb", U"", {}},
      {U"aacccaccb", U"", {}},
      {U"aca", U"baca", {{0, 1, 3}}},
      {U"bccaaccca", U"accac", {{1, 1, 3}, {5, 4, 1}}},
      {U"", U"abccbbbcb", {}},
      {U"baaca", U"c", {{3, 0, 1}}},
      {U"cbbc", U"bcaacba", {{0, 4, 2}}},
      {U"abbac", U"c", {{4, 0, 1}}},
      {U"bbcbcbcba", U"b", {{0, 0, 1}}},
      {U"ccaaccb", U"cbbcbcbab", {{5, 0, 2}}},
      {U"acaba", U"bac", {{0, 1, 2}}},
      {U"bbb", U"a", {}},
      {U"bcbabcb", U"bcbaaa", {{0, 0, 4}}},
      {U"aa", U"abc", {{0, 0, 1}}},
      {U"bb", U"", {}},
      {U"bc", U"ccbac", {{0, 2, 1}, {1, 4, 1}}},
      {U"ccccabcc", U"bbbabc", {{4, 3, 3}}},
      {U"aaaaba", U"b", {{4, 0, 1}}},
      {U"aaacacabc", U"", {}},
      {U"a", U"bacbbcbba", {{0, 1, 1}}},
      {U"b", U"bbbaaac", {{0, 0, 1}}},
      {U"cbbca", U"aacbacca", {{0, 2, 2}, {3, 6, 2}}},
      {U"bcacbcba", U"acccb", {{2, 0, 2}, {5, 3, 2}}},
      {U"caa", U"caacbb", {{0, 0, 3}}},
      {U"", U"", {}},
      {U"bbac", U"bbcbbaaaa", {{0, 3, 3}}},
      {U"ababcca", U"cbcacab", {{0, 5, 2}}},
      {U"bab", U"acbbb", {{0, 2, 1}, {2, 3, 1}}},
      {U"c", U"aa", {}},
      {U"", U"cb", {}},
      {U"cc", U"cbaccaa", {{0, 3, 2}}},
      {U"", U"c", {}},
      {U"ba", U"aba", {{0, 1, 2}}},
      {U"cacb", U"cbaa", {{2, 0, 2}}},
      {U"bcccb", U"acaccaba", {{1, 3, 2}, {4, 6, 1}}},
      {U"aaaabccac", U"", {}},
      {U"ccccb", U"c", {{0, 0, 1}}},
      {U"", U"aba", {}},
      {U"c", U"caabbcc", {{0, 0, 1}}},
  };
  for (const Case& c : cases) {
    EXPECT_EQ(MatchingBlocks(c.a, c.b), c.blocks)
        << utf8::Encode(c.a) << " / " << utf8::Encode(c.b);
  }
}

TEST(ExternalEvalTest, DeletedLetterIsSkipped) {
  const std::u32string gold = U"ab cd\u200Ce";
  const std::u32string corrected = U"ab ce";
  const EvalReport r = EvaluateExternal(U"abcde", corrected, gold);
  EXPECT_EQ(r.masked_skipped, 1u);
  EXPECT_EQ(r.evaluated(), 4u);
  EXPECT_EQ(r.confusion[0][0], 3u);
  EXPECT_EQ(r.confusion[1][1], 1u);
  EXPECT_TRUE(r.per_class[2].vacuous);
}

TEST(ExternalEvalTest, GoldAgainstItselfIsPerfect) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 1000; ++i) {
    const auto g = testing::RandomGoldSentence(rng);
    const EvalReport r = EvaluateExternal(g, g, g);
    ASSERT_EQ(r.macro_f1, 1.0);
    ASSERT_EQ(r.masked_skipped, 0u);
    ASSERT_EQ(r.evaluated(), StripSeparators(g).size());
  }
}

TEST(ExternalEvalTest, AgreesWithBaselineWhenLettersMatch) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const auto g = testing::RandomGoldSentence(rng);
    NoiseConfig cfg;
    cfg.seed = i;
    const auto noisy = InjectNoise(g, cfg, 0).noisy;
    const EvalReport baseline = ScoreBaseline({noisy, g});
    const EvalReport external = EvaluateExternal(noisy, noisy, g);
    ASSERT_EQ(baseline.confusion, external.confusion);
  }
}

TEST(FormatTest, TableAndKeyValue) {
  const EvalReport r = Evaluate(Tags({0, 1, 0}), Tags({0, 1, 1}));
  const std::string table = FormatTable(r, "crf");
  EXPECT_NE(table.find("Avg.F1"), std::string::npos);
  EXPECT_NE(table.find("crf"), std::string::npos);
  EXPECT_NE(table.find("(absent)"), std::string::npos);
  const std::string kv = FormatKeyValue(r);
  EXPECT_NE(kv.find("evaluated=3\n"), std::string::npos);
  EXPECT_NE(kv.find("confusion.0.1=1\n"), std::string::npos);
  EXPECT_NE(kv.find("class2.vacuous=1\n"), std::string::npos);
  EXPECT_NE(kv.find("macro_f1="), std::string::npos);
}

}  // namespace
}  // namespace nimfasele
