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

// Observation features for the character tagger. Each position gets one
// identity feature per window offset (boundary sentinels outside the
// sequence) and the Boolean flags that hold for the focus character.

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nimfasele/charset.hpp"
#include "nimfasele/error.hpp"

namespace nimfasele::crf {

struct FeatureTemplate {
  std::vector<int> offsets = {-5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5};
  bool is_first = true;
  bool is_last = true;
  bool is_joiner = true;
  bool is_digit = true;

  void Validate() const {
    if (std::find(offsets.begin(), offsets.end(), 0) == offsets.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "feature window must contain the focus offset 0");
    }
    if (std::set<int>(offsets.begin(), offsets.end()).size() != offsets.size()) {
      throw Error(ErrorCode::kInvalidArgument, "feature offsets must be distinct");
    }
  }

  bool operator==(const FeatureTemplate&) const = default;
};

namespace detail {

inline void AppendHex(char32_t c, std::string& out) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  char buf[8];
  int n = 0;
  do {
    buf[n++] = kDigits[c & 0xF];
    c >>= 4;
  } while (c != 0 || n < 4);
  while (n > 0) out.push_back(buf[--n]);
}

inline std::string OffsetPrefix(int offset) {
  std::string s = "c[";
  if (offset > 0) s.push_back('+');
  s += std::to_string(offset);
  s += "]=";
  return s;
}

}  // namespace detail

// Feature strings are ASCII without whitespace, e.g. "c[-2]=0645",
// "c[+5]=EOS", "is_joiner".
inline std::vector<std::string> ExtractFeatures(std::u32string_view chars,
                                                std::size_t i,
                                                const FeatureTemplate& tmpl = {}) {
  if (i >= chars.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "feature position " + std::to_string(i) + " out of range");
  }
  std::vector<std::string> out;
  out.reserve(tmpl.offsets.size() + 4);
  const auto n = static_cast<long long>(chars.size());
  for (int offset : tmpl.offsets) {
    std::string f = detail::OffsetPrefix(offset);
    const long long j = static_cast<long long>(i) + offset;
    if (j < 0) {
      f += "BOS";
    } else if (j >= n) {
      f += "EOS";
    } else {
      detail::AppendHex(chars[static_cast<std::size_t>(j)], f);
    }
    out.push_back(std::move(f));
  }
  const char32_t focus = chars[i];
  if (tmpl.is_first && i == 0) out.emplace_back("is_first");
  if (tmpl.is_last && i + 1 == chars.size()) out.emplace_back("is_last");
  if (tmpl.is_joiner && IsJoiner(focus)) out.emplace_back("is_joiner");
  if (tmpl.is_digit && IsDigit(focus)) out.emplace_back("is_digit");
  return out;
}

}  // namespace nimfasele::crf
