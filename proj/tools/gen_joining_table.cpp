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

// Regenerates the range table in include/nimfasele/joining_table.hpp from
// the ICU character database. Not part of the default build.

#include <unicode/uchar.h>

#include <cstdio>
#include <utility>
#include <vector>

namespace {

char ClassOf(UChar32 c) {
  const auto jt = static_cast<UJoiningType>(
      u_getIntPropertyValue(c, UCHAR_JOINING_TYPE));
  if (jt == U_JT_DUAL_JOINING || jt == U_JT_LEFT_JOINING ||
      jt == U_JT_JOIN_CAUSING) {
    return 'D';
  }
  if (jt == U_JT_RIGHT_JOINING) return 'R';
  const int8_t gc = u_charType(c);
  if (gc == U_OTHER_LETTER || gc == U_MODIFIER_LETTER) return 'U';
  return 'X';
}

}  // namespace

int main() {
  const std::pair<UChar32, UChar32> blocks[] = {
      {0x0600, 0x06FF}, {0x0750, 0x077F}, {0x0870, 0x089F},
      {0x08A0, 0x08FF}, {0xFB50, 0xFDFF}, {0xFE70, 0xFEFF}};
  for (const auto& [lo, hi] : blocks) {
    UChar32 start = lo;
    char cur = ClassOf(lo);
    for (UChar32 c = lo + 1; c <= hi + 1; ++c) {
      const char k = c <= hi ? ClassOf(c) : '\0';
      if (k != cur) {
        if (cur != 'X') {
          std::printf("    {0x%04X, 0x%04X, %s},\n", start, c - 1,
                      cur == 'D'   ? "JoinerClass::kDualJoining"
                      : cur == 'R' ? "JoinerClass::kRightJoiningOnly"
                                   : "JoinerClass::kNonJoining");
        }
        start = c;
        cur = k;
      }
    }
  }
  return 0;
}
