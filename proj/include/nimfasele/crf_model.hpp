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

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nimfasele/crf_features.hpp"
#include "nimfasele/error.hpp"
#include "nimfasele/labeling.hpp"

namespace nimfasele::crf {

// How the model expects its input: separators removed, or kept as masked
// input symbols.
enum class InputMode { kStripped, kRetained };

inline constexpr std::size_t kNumTransitions = kNumTags * kNumTags;

// Bijective map between feature strings and dense ids.
class FeatureVocab {
 public:
  FeatureVocab() = default;

  // Returns the existing id when `name` is already present.
  std::uint32_t Add(std::string name) {
    auto [it, inserted] = index_.try_emplace(name, static_cast<std::uint32_t>(names_.size()));
    if (inserted) names_.push_back(std::move(name));
    return it->second;
  }

  std::optional<std::uint32_t> Find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& Name(std::uint32_t id) const { return names_[id]; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Parameter layout shared by the model, inference and training: state
// weight (feature f, tag y) at f * kNumTags + y, followed by the 3x3
// transition block at offset num_features * kNumTags, row = previous tag.
struct ParamLayout {
  std::size_t num_features = 0;

  std::size_t state(std::size_t f, int y) const {
    return f * kNumTags + static_cast<std::size_t>(y);
  }
  std::size_t transition(int from, int to) const {
    return num_features * kNumTags + static_cast<std::size_t>(from * kNumTags + to);
  }
  std::size_t size() const { return num_features * kNumTags + kNumTransitions; }
};

// Immutable after construction.
class CrfModel {
 public:
  CrfModel() : params_(ParamLayout{}.size(), 0.0) {}

  // `params` follows ParamLayout for `vocab`. Throws on non-finite weights.
  CrfModel(FeatureTemplate tmpl, InputMode mode, FeatureVocab vocab,
           std::vector<double> params)
      : template_(std::move(tmpl)),
        mode_(mode),
        vocab_(std::move(vocab)),
        params_(std::move(params)) {
    template_.Validate();
    if (params_.size() != layout().size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "parameter vector does not match the feature vocabulary");
    }
    for (double w : params_) {
      if (!std::isfinite(w)) {
        throw Error(ErrorCode::kNumeric, "model weights must be finite");
      }
    }
  }

  const FeatureTemplate& feature_template() const { return template_; }
  InputMode input_mode() const { return mode_; }
  const FeatureVocab& vocab() const { return vocab_; }
  std::span<const double> params() const { return params_; }
  ParamLayout layout() const { return ParamLayout{vocab_.size()}; }

  double state_weight(std::uint32_t feature, Tag tag) const {
    return params_[layout().state(feature, TagIndex(tag))];
  }
  double transition_weight(Tag from, Tag to) const {
    return params_[layout().transition(TagIndex(from), TagIndex(to))];
  }

  std::size_t num_active_features() const {
    std::size_t n = 0;
    for (std::size_t f = 0; f < vocab_.size(); ++f) {
      for (int y = 0; y < kNumTags; ++y) {
        if (params_[layout().state(f, y)] != 0.0) {
          ++n;
          break;
        }
      }
    }
    return n;
  }

 private:
  FeatureTemplate template_;
  InputMode mode_ = InputMode::kStripped;
  FeatureVocab vocab_;
  std::vector<double> params_;
};

}  // namespace nimfasele::crf
