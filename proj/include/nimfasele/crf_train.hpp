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

// Elastic-net regularized maximum-likelihood training. The L1 term is handled
// by OWL-QN, so weights driven to zero stay exactly zero.

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "nimfasele/crf_features.hpp"
#include "nimfasele/crf_inference.hpp"
#include "nimfasele/crf_model.hpp"
#include "nimfasele/error.hpp"
#include "nimfasele/labeling.hpp"
#include "nimfasele/owlqn.hpp"

namespace nimfasele::crf {

struct TrainConfig {
  double c1 = 0.1;
  double c2 = 0.1;
  int max_iterations = 100;
  double convergence_tol = 1e-5;
  // Features seen fewer times than this at unmasked positions are dropped.
  std::size_t min_feature_count = 1;
  unsigned threads = 1;
  FeatureTemplate feature_template;

  void Validate() const {
    if (!(c1 >= 0.0) || !(c2 >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "c1 and c2 must be non-negative");
    }
    if (max_iterations < 1) {
      throw Error(ErrorCode::kInvalidArgument, "max_iterations must be at least 1");
    }
    feature_template.Validate();
  }
};

struct TrainIteration {
  int iteration = 0;
  // Regularized log-likelihood after the step (higher is better).
  double objective = 0.0;
  double step = 0.0;
  std::size_t nonzero_weights = 0;
  // Builds the model at the current weights.
  std::function<CrfModel()> snapshot;
};

struct TrainSummary {
  int iterations = 0;
  OwlqnStop stop = OwlqnStop::kMaxIterations;
  double initial_objective = 0.0;
  std::vector<double> objective_history;  // one entry per accepted iteration
};

using TrainObserver = std::function<void(const TrainIteration&)>;

inline void ValidateSample(const Sample& s, std::size_t index) {
  if (s.tags.size() != s.symbols.size() || s.mask.size() != s.symbols.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "sample " + std::to_string(index) + " has mismatched field lengths");
  }
}

inline FeatureVocab BuildVocab(std::span<const Sample> data, const FeatureTemplate& tmpl,
                               std::size_t min_count = 1) {
  std::vector<std::string> order;
  std::unordered_map<std::string, std::size_t> counts;
  for (const Sample& s : data) {
    for (std::size_t i = 0; i < s.symbols.size(); ++i) {
      if (!s.mask[i]) continue;
      for (std::string& f : ExtractFeatures(s.symbols, i, tmpl)) {
        auto [it, inserted] = counts.try_emplace(f, 0);
        if (inserted) order.push_back(std::move(f));
        ++it->second;
      }
    }
  }
  FeatureVocab vocab;
  for (std::string& f : order) {
    if (counts[f] >= min_count) vocab.Add(std::move(f));
  }
  return vocab;
}

inline InputMode InferInputMode(std::span<const Sample> data) {
  for (const Sample& s : data) {
    for (char32_t c : s.symbols) {
      if (IsSeparator(c)) return InputMode::kRetained;
    }
  }
  return InputMode::kStripped;
}

struct ObjectiveResult {
  double objective = 0.0;       // LL - c1 |w|_1 - c2 |w|_2^2
  double log_likelihood = 0.0;
  std::vector<double> gradient;  // of `objective`; sign(0) = 0 for the L1 term
};

inline ObjectiveResult LogLikelihoodAndGradient(const CrfModel& model,
                                                std::span<const Sample> batch,
                                                const TrainConfig& cfg) {
  std::vector<EncodedSequence> encoded;
  encoded.reserve(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    ValidateSample(batch[i], i);
    encoded.push_back(EncodeSequence(batch[i], model.feature_template(), model.vocab()));
  }
  const std::span<const double> w = model.params();
  ObjectiveResult out;
  out.gradient.assign(w.size(), 0.0);
  out.log_likelihood =
      DatasetLogLikelihood(encoded, w, model.layout(), out.gradient, cfg.threads);
  double l1 = 0.0;
  double l2 = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    l1 += std::abs(w[j]);
    l2 += w[j] * w[j];
    const double sign = w[j] > 0.0 ? 1.0 : w[j] < 0.0 ? -1.0 : 0.0;
    out.gradient[j] -= cfg.c1 * sign + 2.0 * cfg.c2 * w[j];
  }
  out.objective = out.log_likelihood - cfg.c1 * l1 - cfg.c2 * l2;
  return out;
}

// Deterministic given the dataset order and config.
inline CrfModel Train(std::span<const Sample> data, const TrainConfig& cfg,
                      const TrainObserver& observer = {},
                      TrainSummary* summary = nullptr) {
  cfg.Validate();
  if (data.empty()) throw Error(ErrorCode::kEmptyCorpus, "training dataset is empty");
  for (std::size_t i = 0; i < data.size(); ++i) ValidateSample(data[i], i);

  const FeatureTemplate& tmpl = cfg.feature_template;
  const InputMode mode = InferInputMode(data);
  FeatureVocab vocab = BuildVocab(data, tmpl, cfg.min_feature_count);
  const ParamLayout layout{vocab.size()};
  std::vector<EncodedSequence> encoded;
  encoded.reserve(data.size());
  for (const Sample& s : data) encoded.push_back(EncodeSequence(s, tmpl, vocab));

  // Minimized: -LL + c2 |w|^2; OWL-QN adds c1 |w|_1.
  const SmoothObjective smooth = [&](std::span<const double> w, std::span<double> g) {
    const double ll = DatasetLogLikelihood(encoded, w, layout, g, cfg.threads);
    double l2 = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      l2 += w[j] * w[j];
      g[j] = -g[j] + 2.0 * cfg.c2 * w[j];
    }
    return -ll + cfg.c2 * l2;
  };

  TrainSummary local;
  TrainSummary& sum = summary != nullptr ? *summary : local;
  sum = TrainSummary{};
  {
    std::vector<double> zeros(layout.size(), 0.0), g(layout.size());
    sum.initial_objective = -smooth(zeros, g);
  }

  OwlqnOptions opts;
  opts.c1 = cfg.c1;
  opts.max_iterations = cfg.max_iterations;
  opts.relative_tolerance = cfg.convergence_tol;

  double previous = sum.initial_objective;
  auto on_iteration = [&](const OwlqnIteration& it, std::span<const double> w) {
    const double objective = -it.value;
    if (!std::isfinite(objective)) {
      throw Error(ErrorCode::kTraining, "objective diverged at iteration " +
                                            std::to_string(it.iteration));
    }
    if (objective < previous) {
      throw Error(ErrorCode::kTraining, "objective decreased at iteration " +
                                            std::to_string(it.iteration));
    }
    previous = objective;
    sum.objective_history.push_back(objective);
    if (observer) {
      TrainIteration info;
      info.iteration = it.iteration;
      info.objective = objective;
      info.step = it.step;
      for (double v : w) info.nonzero_weights += v != 0.0 ? 1 : 0;
      info.snapshot = [&tmpl, mode, &vocab, w] {
        return CrfModel(tmpl, mode, vocab, std::vector<double>(w.begin(), w.end()));
      };
      observer(info);
    }
  };

  OwlqnResult result =
      MinimizeOwlqn(smooth, std::vector<double>(layout.size(), 0.0), opts, on_iteration);
  sum.iterations = result.iterations;
  sum.stop = result.stop;
  return CrfModel(tmpl, mode, std::move(vocab), std::move(result.x));
}

}  // namespace nimfasele::crf
