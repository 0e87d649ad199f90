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

// Persian/Arabic-script character knowledge: separators, joining behavior,
// digits and text normalization.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>

#include "nimfasele/error.hpp"
#include "nimfasele/joining_table.hpp"
#include "nimfasele/utf8.hpp"

namespace nimfasele {

inline constexpr char32_t kSpace = U' ';
inline constexpr char32_t kZwnj = U'\u200C';

constexpr bool IsSeparator(char32_t c) { return c == kSpace || c == kZwnj; }

// Total over all code points. Anything outside the Arabic script blocks is
// kNonLetter.
constexpr JoinerClass ClassifyJoiner(char32_t c) {
  const auto& ranges = detail::kJoiningRanges;
  std::size_t lo = 0;
  std::size_t hi = ranges.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (ranges[mid].last < c) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < ranges.size() && ranges[lo].first <= c) return ranges[lo].cls;
  return JoinerClass::kNonLetter;
}

// True when the character connects to a following letter, i.e. a ZWNJ
// placed after it changes the rendering.
constexpr bool IsJoiner(char32_t c) {
  return ClassifyJoiner(c) == JoinerClass::kDualJoining;
}

constexpr std::string_view JoinerClassName(JoinerClass cls) {
  switch (cls) {
    case JoinerClass::kDualJoining: return "DualJoining";
    case JoinerClass::kRightJoiningOnly: return "RightJoiningOnly";
    case JoinerClass::kNonJoining: return "NonJoining";
    case JoinerClass::kNonLetter: return "NonLetter";
  }
  return "?";
}

struct NormalizationOptions {
  // Map Arabic-Indic digits U+0660..U+0669 onto the Persian digits.
  bool unify_digits = false;
};

// Immutable once built; share freely across threads.
class CharClassTable {
 public:
  using Mapping = std::map<char32_t, std::u32string>;

  // The stock Arabic-to-Persian canonicalization table.
  static CharClassTable Default(NormalizationOptions options = {}) {
    Mapping m;
    m[U'ي'] = U"ی";  // Arabic yeh
    m[U'ى'] = U"ی";  // alef maksura
    m[U'ك'] = U"ک";  // Arabic kaf
    m[U'أ'] = U"ا";  // alef with hamza above
    m[U'إ'] = U"ا";  // alef with hamza below
    m[U'ٱ'] = U"ا";  // alef wasla
    m[U'ٲ'] = U"ا";
    m[U'ٳ'] = U"ا";
    m[U'ە'] = U"ه";  // ae
    // Format characters and tatweel are dropped.
    for (char32_t c : {U'\u200B', U'\u200D', U'\u200E', U'\u200F', U'\u00AD',
                       U'\uFEFF', U'\u0640'}) {
      m[c] = U"";
    }
    for (char32_t c = 0x202A; c <= 0x202E; ++c) m[c] = U"";
    for (char32_t c = 0x2066; c <= 0x2069; ++c) m[c] = U"";
    if (options.unify_digits) {
      for (char32_t d = 0; d < 10; ++d) m[0x0660 + d] = std::u32string(1, 0x06F0 + d);
    }
    return CharClassTable(std::move(m), DefaultDigits());
  }

  static const CharClassTable& Builtin() {
    static const CharClassTable table = Default();
    return table;
  }

  static std::set<char32_t> DefaultDigits() {
    std::set<char32_t> digits;
    for (char32_t d = 0; d < 10; ++d) {
      digits.insert(U'0' + d);
      digits.insert(0x06F0 + d);
      digits.insert(0x0660 + d);
    }
    return digits;
  }

  // Throws Error(kInvalidArgument) when the mapping would not be idempotent
  // or would produce a separator.
  CharClassTable(Mapping mapping, std::set<char32_t> digits)
      : mapping_(std::move(mapping)), digits_(std::move(digits)) {
    for (const auto& [key, value] : mapping_) {
      if (IsSeparator(key)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "normalization table may not remap a separator");
      }
      for (char32_t v : value) {
        if (IsSeparator(v)) {
          throw Error(ErrorCode::kInvalidArgument,
                      "normalization table may not produce a separator");
        }
        if (mapping_.count(v) != 0) {
          throw Error(ErrorCode::kInvalidArgument,
                      "normalization table is not idempotent: U+" +
                          Hex(v) + " is both a replacement and a key");
        }
      }
    }
  }

  // Reads `<hex codepoint><TAB><replacement>` lines on top of this table.
  // `#` starts a comment line; blank lines are ignored.
  CharClassTable WithOverrides(std::istream& in) const {
    Mapping m = mapping_;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      const std::size_t tab = line.find('\t');
      if (tab == std::string::npos) {
        throw Error(ErrorCode::kFormat, "expected <hex>\\t<replacement>",
                    line_no);
      }
      std::string_view hex(line.data(), tab);
      if (hex.starts_with("U+") || hex.starts_with("0x")) hex.remove_prefix(2);
      std::uint32_t key = 0;
      const auto [end, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), key, 16);
      if (hex.empty() || ec != std::errc() || end != hex.data() + hex.size()) {
        throw Error(ErrorCode::kFormat, "bad code point", line_no);
      }
      if (key > 0x10FFFF) {
        throw Error(ErrorCode::kFormat, "code point out of range", line_no);
      }
      std::u32string value = utf8::Decode(std::string_view(line).substr(tab + 1), line_no);
      // Mapping a character to itself drops any earlier entry for it.
      if (value.size() == 1 && value[0] == key) {
        m.erase(key);
      } else {
        m[key] = std::move(value);
      }
    }
    return CharClassTable(std::move(m), digits_);
  }

  JoinerClass Classify(char32_t c) const { return ClassifyJoiner(c); }
  bool IsJoiner(char32_t c) const { return nimfasele::IsJoiner(c); }
  bool IsDigit(char32_t c) const { return digits_.count(c) != 0; }

  const Mapping& mapping() const { return mapping_; }
  const std::set<char32_t>& digits() const { return digits_; }

  // Applies the mapping and collapses every run of separators to its first
  // member. Leading and trailing separators are kept.
  std::u32string Normalize(std::u32string_view text) const {
    std::u32string out;
    out.reserve(text.size());
    for (char32_t c : text) {
      if (IsSeparator(c)) {
        if (out.empty() || !IsSeparator(out.back())) out.push_back(c);
        continue;
      }
      auto it = mapping_.find(c);
      if (it == mapping_.end()) {
        out.push_back(c);
      } else {
        out.append(it->second);
      }
    }
    return out;
  }

 private:
  static std::string Hex(char32_t c) {
    static constexpr char kDigits[] = "0123456789ABCDEF";
    std::string s;
    do {
      s.insert(s.begin(), kDigits[c & 0xF]);
      c >>= 4;
    } while (c != 0);
    while (s.size() < 4) s.insert(s.begin(), '0');
    return s;
  }

  Mapping mapping_;
  std::set<char32_t> digits_;
};

inline bool IsDigit(char32_t c) { return CharClassTable::Builtin().IsDigit(c); }

inline std::u32string NormalizeText(std::u32string_view text) {
  return CharClassTable::Builtin().Normalize(text);
}

// Removes leading and trailing separators.
inline std::u32string TrimSeparators(std::u32string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && IsSeparator(text[b])) ++b;
  while (e > b && IsSeparator(text[e - 1])) --e;
  return std::u32string(text.substr(b, e - b));
}

}  // namespace nimfasele
