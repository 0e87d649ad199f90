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

// Decoding and end-to-end text correction with a trained model.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nimfasele/charset.hpp"
#include "nimfasele/crf_inference.hpp"
#include "nimfasele/crf_model.hpp"
#include "nimfasele/error.hpp"
#include "nimfasele/labeling.hpp"

namespace nimfasele::crf {

// Tags for every symbol; masked symbols get kNone.
inline std::vector<Tag> PredictMasked(const CrfModel& model, std::u32string_view symbols,
                                      const std::vector<bool>& mask) {
  if (symbols.empty()) throw Error(ErrorCode::kInvalidArgument, "cannot tag empty input");
  const EncodedSequence seq =
      EncodeSequence(symbols, mask, {}, model.feature_template(), model.vocab());
  const Lattice lat = BuildLattice(seq, model.params(), model.layout());
  const std::vector<std::uint8_t> path = Viterbi(lat);
  std::vector<Tag> tags(symbols.size(), Tag::kNone);
  for (std::size_t k = 0; k < path.size(); ++k) tags[seq.positions[k]] = TagFromIndex(path[k]);
  return tags;
}

// Argmax tag sequence for separator-free `chars`.
inline std::vector<Tag> Predict(const CrfModel& model, std::u32string_view chars) {
  return PredictMasked(model, chars, {});
}

// Normalizes `raw`, re-decides every separator and returns the result. A
// stripped-input model sees the text without separators; a retained-input
// model sees the existing separators as masked symbols. No separator is
// emitted after the final character.
inline std::u32string Correct(const CrfModel& model, std::u32string_view raw,
                              const CharClassTable& table = CharClassTable::Builtin()) {
  const std::u32string text = TrimSeparators(table.Normalize(raw));
  if (text.empty()) return {};
  std::u32string chars;
  std::vector<Tag> tags;
  if (model.input_mode() == InputMode::kStripped) {
    for (char32_t c : text) {
      if (!IsSeparator(c)) chars.push_back(c);
    }
    tags = Predict(model, chars);
  } else {
    std::vector<bool> mask(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) mask[i] = !IsSeparator(text[i]);
    const std::vector<Tag> all = PredictMasked(model, text, mask);
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (!mask[i]) continue;
      chars.push_back(text[i]);
      tags.push_back(all[i]);
    }
  }
  tags.back() = Tag::kNone;
  return DecodeTags(chars, tags);
}

}  // namespace nimfasele::crf
