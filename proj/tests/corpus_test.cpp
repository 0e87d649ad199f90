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

#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "nimfasele/corpus.hpp"
#include "support/oracles.hpp"

namespace nimfasele {
namespace {

Corpus Numbered(std::size_t n) {
  Corpus c;
  for (std::size_t i = 0; i < n; ++i) c.sentences.push_back(utf8::Decode("s" + std::to_string(i)));
  return c;
}

TEST(CorpusTest, LoadsPlainSentences) {
  std::istringstream in("mi\u200Ckonam xub ast\n\n  \nfoo  bar \r\n");
  const LoadedCorpus loaded = LoadTokenizedCorpus(in);
  ASSERT_EQ(loaded.corpus.size(), 2u);
  EXPECT_EQ(loaded.corpus.sentences[0], U"mi\u200Ckonam xub ast");
  EXPECT_EQ(loaded.corpus.sentences[1], U"foo bar");
  EXPECT_EQ(loaded.skipped_empty, 2u);
  const CorpusStats stats = ComputeStats(Corpus{{loaded.corpus.sentences[0]}, ""});
  EXPECT_EQ(stats.words, 3u);
}

TEST(CorpusTest, LoadsTwoColumnTokensAndConvertsInnerSpaces) {
  std::istringstream in("mi konam\tV\nxub\tADJ\n\n\xD9\x83\xD8\xAA\xD8\xA7\xD8\xA8\tN\n");
  const LoadedCorpus loaded = LoadTokenizedCorpus(in, {.format = CorpusFormat::kTwoColumn});
  ASSERT_EQ(loaded.corpus.size(), 2u);
  EXPECT_EQ(loaded.corpus.sentences[0], U"mi\u200Ckonam xub");
  EXPECT_EQ(loaded.corpus.sentences[1], U"کتاب");  // Arabic kaf normalized
}

TEST(CorpusTest, ReportsDecodeErrorsWithLineNumbers) {
  std::istringstream in("ok\nbad \xFF here\n");
  try {
    LoadTokenizedCorpus(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDecode);
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(CorpusTest, LoadedSentencesSatisfyInvariantsOnFuzzedInput) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    std::u32string line = testing::RandomUnicode(rng, 30);
    std::erase(line, U'\n');
    std::erase(line, U'\r');
    std::istringstream in(utf8::Encode(line) + "\n");
    for (auto format : {CorpusFormat::kPlain, CorpusFormat::kTwoColumn}) {
      in.clear();
      in.seekg(0);
      const LoadedCorpus loaded = LoadTokenizedCorpus(in, {.format = format});
      for (const auto& s : loaded.corpus.sentences) {
        ASSERT_FALSE(s.empty());
        ASSERT_NO_THROW(ValidateGold(s));
      }
    }
  }
}

TEST(CorpusTest, SplitsByLeadingBlocks) {
  const CorpusSplit ten = SplitCorpus(Numbered(10));
  EXPECT_EQ(ten.test.size(), 1u);
  EXPECT_EQ(ten.valid.size(), 1u);
  EXPECT_EQ(ten.train.size(), 8u);

  const Corpus hundred = Numbered(100);
  const CorpusSplit split = SplitCorpus(hundred, {0.1, 0.1});
  EXPECT_EQ(split.test.sentences.front(), U"s0");
  EXPECT_EQ(split.test.sentences.back(), U"s9");
  EXPECT_EQ(split.valid.sentences.front(), U"s10");
  EXPECT_EQ(split.valid.sentences.back(), U"s19");
  EXPECT_EQ(split.train.sentences.front(), U"s20");
  EXPECT_EQ(split.train.size(), 80u);
}

TEST(CorpusTest, SplitIsAnOrderedPartition) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 300;
    const double t = (rng() % 50) / 100.0;
    const double v = (rng() % 50) / 100.0;
    const Corpus c = Numbered(n);
    const CorpusSplit s = SplitCorpus(c, {t, v});
    std::vector<std::u32string> joined = s.test.sentences;
    joined.insert(joined.end(), s.valid.sentences.begin(), s.valid.sentences.end());
    joined.insert(joined.end(), s.train.sentences.begin(), s.train.sentences.end());
    ASSERT_EQ(joined, c.sentences);
    ASSERT_EQ(s.test.size(), static_cast<std::size_t>(std::floor(t * n + 1e-9)));
  }
}

TEST(CorpusTest, SplitErrors) {
  EXPECT_THROW(SplitCorpus(Numbered(10), {0.6, 0.5}), Error);
  EXPECT_THROW(SplitCorpus(Numbered(10), {-0.1, 0.1}), Error);
  try {
    SplitCorpus(Corpus{}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCorpus);
  }
}

TEST(CorpusTest, LoadsParallelPairs) {
  std::istringstream in(
      "mikonam\tmi\u200Ckonam\nmi konam\tmi\u200Ckonam\nxub ast\txub ast\n");
  const auto pairs = LoadParallel(in);
  ASSERT_EQ(pairs.size(), 3u);
  EXPECT_EQ(pairs[0].raw, U"mikonam");
  EXPECT_EQ(pairs[0].gold, U"mi\u200Ckonam");
  EXPECT_EQ(pairs[1].raw, U"mi konam");
  EXPECT_EQ(pairs[2].raw, pairs[2].gold);
}

TEST(CorpusTest, ParallelFormatErrors) {
  std::istringstream missing_tab("a\tb\nno tab here\n");
  try {
    LoadParallel(missing_tab);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFormat);
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream differs("abc\tabd\n");
  EXPECT_NO_THROW(LoadParallel(differs));
  differs.clear();
  differs.seekg(0);
  EXPECT_THROW(LoadParallel(differs, {.strict = true}), Error);
}

TEST(CorpusTest, Stats) {
  EXPECT_EQ(ComputeStats(Corpus{}), (CorpusStats{0, 0}));
  const Corpus c{{U"ab cd", U"x\u200Cy z"}, ""};
  EXPECT_EQ(ComputeStats(c), (CorpusStats{4, 10}));
  EXPECT_EQ(ComputeStats(c, CharCount::kExcludeSeparators), (CorpusStats{4, 7}));
}

TEST(CorpusTest, StatsAreAdditive) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    Corpus a, b, ab;
    for (int i = 0; i < 5; ++i) a.sentences.push_back(testing::RandomGoldSentence(rng));
    for (int i = 0; i < 3; ++i) b.sentences.push_back(testing::RandomGoldSentence(rng));
    ab.sentences = a.sentences;
    ab.sentences.insert(ab.sentences.end(), b.sentences.begin(), b.sentences.end());
    const auto sa = ComputeStats(a), sb = ComputeStats(b), sab = ComputeStats(ab);
    ASSERT_EQ(sab.words, sa.words + sb.words);
    ASSERT_EQ(sab.characters, sa.characters + sb.characters);
  }
}

}  // namespace
}  // namespace nimfasele
