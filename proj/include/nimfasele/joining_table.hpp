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

// Joining behavior of the Arabic script blocks, generated from the Unicode
// character database (Joining_Type plus General_Category) by
// tools/gen_joining_table.cpp. Joining types D, L and C are folded into
// kDualJoining; R becomes kRightJoiningOnly; remaining letters (Lo/Lm) are
// kNonJoining. Code points in the blocks that are not listed are not letters.

#include <array>
#include <cstdint>

namespace nimfasele {

enum class JoinerClass : std::uint8_t {
  kDualJoining,
  kRightJoiningOnly,
  kNonJoining,
  kNonLetter,
};

namespace detail {

struct JoiningRange {
  char32_t first;
  char32_t last;
  JoinerClass cls;
};

struct BlockRange {
  char32_t first;
  char32_t last;
};

inline constexpr std::array<BlockRange, 6> kArabicBlocks = {{
    {0x0600, 0x06FF},  // Arabic
    {0x0750, 0x077F},  // Arabic Supplement
    {0x0870, 0x089F},  // Arabic Extended-B
    {0x08A0, 0x08FF},  // Arabic Extended-A
    {0xFB50, 0xFDFF},  // Arabic Presentation Forms-A
    {0xFE70, 0xFEFF},  // Arabic Presentation Forms-B
}};

// Sorted, non-overlapping.
inline constexpr std::array<JoiningRange, 66> kJoiningRanges = {{
    {0x0620, 0x0620, JoinerClass::kDualJoining},
    {0x0621, 0x0621, JoinerClass::kNonJoining},
    {0x0622, 0x0625, JoinerClass::kRightJoiningOnly},
    {0x0626, 0x0626, JoinerClass::kDualJoining},
    {0x0627, 0x0627, JoinerClass::kRightJoiningOnly},
    {0x0628, 0x0628, JoinerClass::kDualJoining},
    {0x0629, 0x0629, JoinerClass::kRightJoiningOnly},
    {0x062A, 0x062E, JoinerClass::kDualJoining},
    {0x062F, 0x0632, JoinerClass::kRightJoiningOnly},
    {0x0633, 0x0647, JoinerClass::kDualJoining},
    {0x0648, 0x0648, JoinerClass::kRightJoiningOnly},
    {0x0649, 0x064A, JoinerClass::kDualJoining},
    {0x066E, 0x066F, JoinerClass::kDualJoining},
    {0x0671, 0x0673, JoinerClass::kRightJoiningOnly},
    {0x0674, 0x0674, JoinerClass::kNonJoining},
    {0x0675, 0x0677, JoinerClass::kRightJoiningOnly},
    {0x0678, 0x0687, JoinerClass::kDualJoining},
    {0x0688, 0x0699, JoinerClass::kRightJoiningOnly},
    {0x069A, 0x06BF, JoinerClass::kDualJoining},
    {0x06C0, 0x06C0, JoinerClass::kRightJoiningOnly},
    {0x06C1, 0x06C2, JoinerClass::kDualJoining},
    {0x06C3, 0x06CB, JoinerClass::kRightJoiningOnly},
    {0x06CC, 0x06CC, JoinerClass::kDualJoining},
    {0x06CD, 0x06CD, JoinerClass::kRightJoiningOnly},
    {0x06CE, 0x06CE, JoinerClass::kDualJoining},
    {0x06CF, 0x06CF, JoinerClass::kRightJoiningOnly},
    {0x06D0, 0x06D1, JoinerClass::kDualJoining},
    {0x06D2, 0x06D3, JoinerClass::kRightJoiningOnly},
    {0x06D5, 0x06D5, JoinerClass::kRightJoiningOnly},
    {0x06E5, 0x06E6, JoinerClass::kNonJoining},
    {0x06EE, 0x06EF, JoinerClass::kRightJoiningOnly},
    {0x06FA, 0x06FC, JoinerClass::kDualJoining},
    {0x06FF, 0x06FF, JoinerClass::kDualJoining},
    {0x0750, 0x0758, JoinerClass::kDualJoining},
    {0x0759, 0x075B, JoinerClass::kRightJoiningOnly},
    {0x075C, 0x076A, JoinerClass::kDualJoining},
    {0x076B, 0x076C, JoinerClass::kRightJoiningOnly},
    {0x076D, 0x0770, JoinerClass::kDualJoining},
    {0x0771, 0x0771, JoinerClass::kRightJoiningOnly},
    {0x0772, 0x0772, JoinerClass::kDualJoining},
    {0x0773, 0x0774, JoinerClass::kRightJoiningOnly},
    {0x0775, 0x0777, JoinerClass::kDualJoining},
    {0x0778, 0x0779, JoinerClass::kRightJoiningOnly},
    {0x077A, 0x077F, JoinerClass::kDualJoining},
    {0x0870, 0x0882, JoinerClass::kRightJoiningOnly},
    {0x0883, 0x0886, JoinerClass::kDualJoining},
    {0x0887, 0x0887, JoinerClass::kNonJoining},
    {0x0889, 0x088D, JoinerClass::kDualJoining},
    {0x088E, 0x088E, JoinerClass::kRightJoiningOnly},
    {0x08A0, 0x08A9, JoinerClass::kDualJoining},
    {0x08AA, 0x08AC, JoinerClass::kRightJoiningOnly},
    {0x08AD, 0x08AD, JoinerClass::kNonJoining},
    {0x08AE, 0x08AE, JoinerClass::kRightJoiningOnly},
    {0x08AF, 0x08B0, JoinerClass::kDualJoining},
    {0x08B1, 0x08B2, JoinerClass::kRightJoiningOnly},
    {0x08B3, 0x08B8, JoinerClass::kDualJoining},
    {0x08B9, 0x08B9, JoinerClass::kRightJoiningOnly},
    {0x08BA, 0x08C8, JoinerClass::kDualJoining},
    {0x08C9, 0x08C9, JoinerClass::kNonJoining},
    {0xFB50, 0xFBB1, JoinerClass::kNonJoining},
    {0xFBD3, 0xFD3D, JoinerClass::kNonJoining},
    {0xFD50, 0xFD8F, JoinerClass::kNonJoining},
    {0xFD92, 0xFDC7, JoinerClass::kNonJoining},
    {0xFDF0, 0xFDFB, JoinerClass::kNonJoining},
    {0xFE70, 0xFE74, JoinerClass::kNonJoining},
    {0xFE76, 0xFEFC, JoinerClass::kNonJoining},
}};

}  // namespace detail
}  // namespace nimfasele
