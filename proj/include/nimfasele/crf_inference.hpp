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

// Linear-chain inference over the unmasked positions of a sample. Masked
// positions are left out of the chain entirely: they have no emission and
// the transition runs directly between the unmasked neighbours around them.
// Their symbols still appear in the feature windows of other positions.
//
// All recursions run in log space.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "nimfasele/crf_features.hpp"
#include "nimfasele/crf_model.hpp"
#include "nimfasele/error.hpp"
#include "nimfasele/labeling.hpp"

namespace nimfasele::crf {

using TagScores = std::array<double, kNumTags>;

// A sample reduced to feature ids along its chain.
struct EncodedSequence {
  std::vector<std::uint32_t> feature_ids;  // concatenated per chain node
  std::vector<std::uint32_t> offsets{0};   // node k owns [offsets[k], offsets[k+1])
  std::vector<std::uint8_t> tags;          // gold tag per node
  std::vector<std::size_t> positions;      // symbol index per node

  std::size_t length() const { return positions.size(); }
  std::span<const std::uint32_t> features(std::size_t k) const {
    return std::span<const std::uint32_t>(feature_ids).subspan(
        offsets[k], offsets[k + 1] - offsets[k]);
  }
};

// Features absent from `vocab` are dropped. `tags` may be empty when
// encoding for prediction.
inline EncodedSequence EncodeSequence(std::u32string_view symbols,
                                      const std::vector<bool>& mask,
                                      std::span<const Tag> tags,
                                      const FeatureTemplate& tmpl,
                                      const FeatureVocab& vocab) {
  EncodedSequence seq;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (!mask.empty() && !mask[i]) continue;
    for (const std::string& f : ExtractFeatures(symbols, i, tmpl)) {
      if (auto id = vocab.Find(f)) seq.feature_ids.push_back(*id);
    }
    seq.offsets.push_back(static_cast<std::uint32_t>(seq.feature_ids.size()));
    seq.positions.push_back(i);
    seq.tags.push_back(tags.empty() ? 0 : static_cast<std::uint8_t>(TagIndex(tags[i])));
  }
  return seq;
}

inline EncodedSequence EncodeSequence(const Sample& s, const FeatureTemplate& tmpl,
                                      const FeatureVocab& vocab) {
  return EncodeSequence(s.symbols, s.mask, s.tags, tmpl, vocab);
}

struct Lattice {
  std::vector<TagScores> emit;
  std::array<double, kNumTransitions> trans{};

  std::size_t length() const { return emit.size(); }
  double t(int from, int to) const { return trans[from * kNumTags + to]; }
};

inline Lattice BuildLattice(const EncodedSequence& seq, std::span<const double> params,
                            const ParamLayout& layout) {
  Lattice lat;
  lat.emit.assign(seq.length(), TagScores{});
  for (std::size_t k = 0; k < seq.length(); ++k) {
    for (std::uint32_t f : seq.features(k)) {
      for (int y = 0; y < kNumTags; ++y) lat.emit[k][y] += params[layout.state(f, y)];
    }
  }
  for (int a = 0; a < kNumTags; ++a) {
    for (int b = 0; b < kNumTags; ++b) {
      lat.trans[a * kNumTags + b] = params[layout.transition(a, b)];
    }
  }
  return lat;
}

inline double LogSumExp(std::span<const double> xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

// Unnormalized log score of a tag path.
inline double PathScore(const Lattice& lat, std::span<const std::uint8_t> tags) {
  double s = 0.0;
  for (std::size_t k = 0; k < lat.length(); ++k) {
    s += lat.emit[k][tags[k]];
    if (k > 0) s += lat.t(tags[k - 1], tags[k]);
  }
  return s;
}

inline std::vector<TagScores> ForwardScores(const Lattice& lat) {
  std::vector<TagScores> alpha(lat.length());
  for (std::size_t k = 0; k < lat.length(); ++k) {
    for (int y = 0; y < kNumTags; ++y) {
      if (k == 0) {
        alpha[k][y] = lat.emit[k][y];
        continue;
      }
      TagScores in;
      for (int p = 0; p < kNumTags; ++p) in[p] = alpha[k - 1][p] + lat.t(p, y);
      alpha[k][y] = lat.emit[k][y] + LogSumExp(in);
    }
  }
  return alpha;
}

// log of the partition function; 0 for an empty chain.
inline double LogPartition(const Lattice& lat) {
  if (lat.length() == 0) return 0.0;
  return LogSumExp(ForwardScores(lat).back());
}

struct Marginals {
  double log_z = 0.0;
  std::vector<TagScores> node;                  // P(y_k = y)
  std::array<double, kNumTransitions> edge{};   // sum over k of P(y_{k-1}, y_k)
};

inline Marginals ForwardBackward(const Lattice& lat) {
  Marginals out;
  const std::size_t m = lat.length();
  if (m == 0) return out;
  const std::vector<TagScores> alpha = ForwardScores(lat);
  std::vector<TagScores> beta(m);
  beta[m - 1].fill(0.0);
  for (std::size_t k = m - 1; k-- > 0;) {
    for (int y = 0; y < kNumTags; ++y) {
      TagScores out_scores;
      for (int n = 0; n < kNumTags; ++n) {
        out_scores[n] = lat.t(y, n) + lat.emit[k + 1][n] + beta[k + 1][n];
      }
      beta[k][y] = LogSumExp(out_scores);
    }
  }
  out.log_z = LogSumExp(alpha.back());
  out.node.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    for (int y = 0; y < kNumTags; ++y) {
      out.node[k][y] = std::exp(alpha[k][y] + beta[k][y] - out.log_z);
    }
    if (k == 0) continue;
    for (int p = 0; p < kNumTags; ++p) {
      for (int y = 0; y < kNumTags; ++y) {
        out.edge[p * kNumTags + y] += std::exp(alpha[k - 1][p] + lat.t(p, y) +
                                               lat.emit[k][y] + beta[k][y] - out.log_z);
      }
    }
  }
  return out;
}

// Highest-scoring path. Ties go to the lower tag, both in the back-pointers
// and in the final state.
inline std::vector<std::uint8_t> Viterbi(const Lattice& lat) {
  const std::size_t m = lat.length();
  std::vector<std::uint8_t> path(m, 0);
  if (m == 0) return path;
  std::vector<TagScores> delta(m);
  std::vector<std::array<std::uint8_t, kNumTags>> back(m);
  delta[0] = lat.emit[0];
  for (std::size_t k = 1; k < m; ++k) {
    for (int y = 0; y < kNumTags; ++y) {
      int best = 0;
      double best_score = delta[k - 1][0] + lat.t(0, y);
      for (int p = 1; p < kNumTags; ++p) {
        const double s = delta[k - 1][p] + lat.t(p, y);
        if (s > best_score) {
          best_score = s;
          best = p;
        }
      }
      delta[k][y] = best_score + lat.emit[k][y];
      back[k][y] = static_cast<std::uint8_t>(best);
    }
  }
  int last = 0;
  for (int y = 1; y < kNumTags; ++y) {
    if (delta[m - 1][y] > delta[m - 1][last]) last = y;
  }
  path[m - 1] = static_cast<std::uint8_t>(last);
  for (std::size_t k = m - 1; k > 0; --k) path[k - 1] = back[k][path[k]];
  return path;
}

// Adds d log p(gold | x) / d params into `grad` and returns log p(gold | x).
inline double AccumulateLogLikelihood(const EncodedSequence& seq,
                                      std::span<const double> params,
                                      const ParamLayout& layout,
                                      std::span<double> grad) {
  if (seq.length() == 0) return 0.0;
  const Lattice lat = BuildLattice(seq, params, layout);
  const Marginals marg = ForwardBackward(lat);
  for (std::size_t k = 0; k < seq.length(); ++k) {
    const int gold = seq.tags[k];
    for (std::uint32_t f : seq.features(k)) {
      for (int y = 0; y < kNumTags; ++y) {
        grad[layout.state(f, y)] += (y == gold ? 1.0 : 0.0) - marg.node[k][y];
      }
    }
    if (k > 0) grad[layout.transition(seq.tags[k - 1], gold)] += 1.0;
  }
  for (int p = 0; p < kNumTags; ++p) {
    for (int y = 0; y < kNumTags; ++y) {
      grad[layout.transition(p, y)] -= marg.edge[p * kNumTags + y];
    }
  }
  return PathScore(lat, seq.tags) - marg.log_z;
}

// Sentences are split into a fixed number of contiguous chunks whose partial
// sums are added in chunk order, so results do not depend on `threads`.
inline constexpr std::size_t kReductionChunks = 8;

// Returns the summed log-likelihood; `grad` receives its gradient.
inline double DatasetLogLikelihood(std::span<const EncodedSequence> data,
                                   std::span<const double> params,
                                   const ParamLayout& layout, std::span<double> grad,
                                   unsigned threads = 1) {
  const std::size_t n = data.size();
  const std::size_t chunks = std::min(kReductionChunks, std::max<std::size_t>(n, 1));
  std::vector<std::vector<double>> partial_grad(chunks);
  std::vector<double> partial_ll(chunks, 0.0);
  std::vector<std::size_t> bad(chunks, n);

  auto run_chunk = [&](std::size_t c) {
    std::vector<double>& g = partial_grad[c];
    g.assign(params.size(), 0.0);
    const std::size_t begin = c * n / chunks;
    const std::size_t end = (c + 1) * n / chunks;
    for (std::size_t i = begin; i < end; ++i) {
      const double ll = AccumulateLogLikelihood(data[i], params, layout, g);
      if (!std::isfinite(ll)) {
        bad[c] = i;
        return;
      }
      partial_ll[c] += ll;
    }
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
  if (threads == 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        for (std::size_t c = t; c < chunks; c += threads) run_chunk(c);
      });
    }
  }

  for (std::size_t c = 0; c < chunks; ++c) {
    if (bad[c] != n) {
      throw Error(ErrorCode::kNumeric,
                  "non-finite log-likelihood in sentence " + std::to_string(bad[c]));
    }
  }
  std::fill(grad.begin(), grad.end(), 0.0);
  double ll = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    ll += partial_ll[c];
    for (std::size_t j = 0; j < grad.size(); ++j) grad[j] += partial_grad[c][j];
  }
  return ll;
}

}  // namespace nimfasele::crf
