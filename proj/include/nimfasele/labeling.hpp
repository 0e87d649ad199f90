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

// Per-character tag representation. A tag says which separator, if any,
// follows the character it is attached to.
//
// Two encodings exist:
//  * stripped (TaggedSentence): separators are removed from the input and
//    live only in the tags;
//  * retained (Sample from EncodeRetained): separators stay in the symbol
//    sequence as input symbols with mask=false and a placeholder tag.
//
// Both are written to dataset files as Sample lines.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nimfasele/charset.hpp"
#include "nimfasele/error.hpp"
#include "nimfasele/utf8.hpp"

namespace nimfasele {

enum class Tag : std::uint8_t { kNone = 0, kSpace = 1, kZwnj = 2 };

inline constexpr int kNumTags = 3;

constexpr int TagIndex(Tag t) { return static_cast<int>(t); }

constexpr Tag TagFromIndex(int i) { return static_cast<Tag>(i); }

// Tag produced by the separator `sep`; kNone for anything else.
constexpr Tag TagForSeparator(char32_t sep) {
  if (sep == kSpace) return Tag::kSpace;
  if (sep == kZwnj) return Tag::kZwnj;
  return Tag::kNone;
}

struct TaggedSentence {
  std::u32string chars;
  std::vector<Tag> tags;
  std::vector<bool> mask;
  std::u32string source_text;
};

// The unit of training, dataset files and evaluation.
struct Sample {
  std::u32string symbols;
  std::vector<Tag> tags;
  std::vector<bool> mask;

  bool operator==(const Sample&) const = default;
};

inline void ValidateGold(std::u32string_view gold) {
  if (gold.empty()) return;
  if (IsSeparator(gold.front()) || IsSeparator(gold.back())) {
    throw Error(ErrorCode::kInvalidSentence,
                "sentence begins or ends with a separator");
  }
  for (std::size_t i = 1; i < gold.size(); ++i) {
    if (IsSeparator(gold[i]) && IsSeparator(gold[i - 1])) {
      throw Error(ErrorCode::kInvalidSentence,
                  "adjacent separators at offset " + std::to_string(i - 1));
    }
  }
}

inline TaggedSentence EncodeStripped(std::u32string_view gold) {
  ValidateGold(gold);
  TaggedSentence out;
  out.source_text = std::u32string(gold);
  out.chars.reserve(gold.size());
  out.tags.reserve(gold.size());
  for (char32_t c : gold) {
    if (IsSeparator(c)) {
      out.tags.back() = TagForSeparator(c);
    } else {
      out.chars.push_back(c);
      out.tags.push_back(Tag::kNone);
    }
  }
  out.mask.assign(out.chars.size(), true);
  return out;
}

inline std::u32string DecodeTags(std::u32string_view chars,
                                 std::span<const Tag> tags) {
  if (chars.size() != tags.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "character and tag sequences differ in length");
  }
  std::u32string out;
  out.reserve(chars.size() * 5 / 4 + 1);
  for (std::size_t i = 0; i < chars.size(); ++i) {
    out.push_back(chars[i]);
    if (tags[i] == Tag::kSpace) out.push_back(kSpace);
    else if (tags[i] == Tag::kZwnj) out.push_back(kZwnj);
  }
  return out;
}

inline std::u32string Decode(const TaggedSentence& t) {
  return DecodeTags(t.chars, t.tags);
}

// `gold_tags` holds one tag per non-separator character of `noisy`.
inline Sample EncodeRetained(std::u32string_view noisy,
                             std::span<const Tag> gold_tags) {
  Sample out;
  out.symbols = std::u32string(noisy);
  out.tags.reserve(noisy.size());
  out.mask.reserve(noisy.size());
  std::size_t k = 0;
  for (char32_t c : noisy) {
    if (IsSeparator(c)) {
      out.tags.push_back(Tag::kNone);
      out.mask.push_back(false);
      continue;
    }
    if (k >= gold_tags.size()) {
      throw Error(ErrorCode::kAlignment,
                  "more non-separator characters than gold tags");
    }
    out.tags.push_back(gold_tags[k++]);
    out.mask.push_back(true);
  }
  if (k != gold_tags.size()) {
    throw Error(ErrorCode::kAlignment,
                "fewer non-separator characters than gold tags");
  }
  return out;
}

inline Sample ToSample(const TaggedSentence& t) {
  return Sample{t.chars, t.tags, t.mask};
}

// Reads the separator decisions of arbitrary text: each non-separator
// character gets the tag of the first separator following it. Separators
// before the first character carry no decision and are dropped.
struct SeparatorDecisions {
  std::u32string chars;
  std::vector<Tag> tags;
};

inline SeparatorDecisions ReadSeparatorDecisions(std::u32string_view text) {
  SeparatorDecisions out;
  bool in_run = false;
  for (char32_t c : text) {
    if (IsSeparator(c)) {
      if (!in_run && !out.chars.empty()) out.tags.back() = TagForSeparator(c);
      in_run = true;
    } else {
      out.chars.push_back(c);
      out.tags.push_back(Tag::kNone);
      in_run = false;
    }
  }
  return out;
}

// Dataset line: symbols<TAB>tags<TAB>mask, tags as digits, mask as T/F.
inline std::string SerializeSample(const Sample& s) {
  std::string line = utf8::Encode(s.symbols);
  line.push_back('\t');
  for (Tag t : s.tags) line.push_back(static_cast<char>('0' + TagIndex(t)));
  line.push_back('\t');
  for (bool m : s.mask) line.push_back(m ? 'T' : 'F');
  return line;
}

// Symbols may themselves contain TABs, so the two trailing fields are split
// off from the right.
inline Sample ParseSample(std::string_view line, std::size_t line_no = 0) {
  const std::size_t mask_tab = line.rfind('\t');
  if (mask_tab == std::string_view::npos || mask_tab == 0) {
    throw Error(ErrorCode::kFormat, "expected symbols<TAB>tags<TAB>mask",
                line_no);
  }
  const std::size_t tags_tab = line.rfind('\t', mask_tab - 1);
  if (tags_tab == std::string_view::npos) {
    throw Error(ErrorCode::kFormat, "expected symbols<TAB>tags<TAB>mask",
                line_no);
  }
  Sample s;
  s.symbols = utf8::Decode(line.substr(0, tags_tab), line_no);
  for (char c : line.substr(tags_tab + 1, mask_tab - tags_tab - 1)) {
    if (c < '0' || c > '2') {
      throw Error(ErrorCode::kFormat, "tag must be 0, 1 or 2", line_no);
    }
    s.tags.push_back(TagFromIndex(c - '0'));
  }
  for (char c : line.substr(mask_tab + 1)) {
    if (c != 'T' && c != 'F') {
      throw Error(ErrorCode::kFormat, "mask must be T or F", line_no);
    }
    s.mask.push_back(c == 'T');
  }
  if (s.tags.size() != s.symbols.size() || s.mask.size() != s.symbols.size()) {
    throw Error(ErrorCode::kFormat, "field lengths differ", line_no);
  }
  return s;
}

}  // namespace nimfasele
