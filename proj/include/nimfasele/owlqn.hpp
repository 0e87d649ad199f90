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

// Orthant-wise limited-memory quasi-Newton (OWL-QN) minimization of
//   F(x) = f(x) + c1 * |x|_1
// for smooth f. With c1 = 0 this is plain L-BFGS with a backtracking
// Armijo line search.
//
// Each accepted iteration satisfies F(x_new) <= F(x) + 1e-4 * <pg, x_new - x>
// with <pg, x_new - x> < 0, so F strictly decreases.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <span>
#include <vector>

namespace nimfasele::crf {

struct OwlqnOptions {
  double c1 = 0.0;
  int max_iterations = 100;
  // Stop when |F_prev - F| / max(|F|, 1) falls below this.
  double relative_tolerance = 1e-5;
  int memory = 6;
  int max_linesearch = 40;
};

enum class OwlqnStop {
  kMaxIterations,
  kConverged,
  kZeroGradient,
  kLineSearchFailed,
};

struct OwlqnIteration {
  int iteration = 0;  // 1-based
  double value = 0.0;  // F after the step
  double step = 0.0;
  int evaluations = 0;
};

struct OwlqnResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  OwlqnStop stop = OwlqnStop::kMaxIterations;
};

// Evaluates f at x, writes its gradient to g, returns f(x).
using SmoothObjective = std::function<double(std::span<const double> x, std::span<double> g)>;

namespace detail {

inline double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double L1(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

// Minimum-norm subgradient of F.
inline void PseudoGradient(std::span<const double> x, std::span<const double> g,
                           double c1, std::span<double> pg) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (c1 == 0.0) {
      pg[i] = g[i];
    } else if (x[i] < 0.0) {
      pg[i] = g[i] - c1;
    } else if (x[i] > 0.0) {
      pg[i] = g[i] + c1;
    } else if (g[i] + c1 < 0.0) {
      pg[i] = g[i] + c1;
    } else if (g[i] - c1 > 0.0) {
      pg[i] = g[i] - c1;
    } else {
      pg[i] = 0.0;
    }
  }
}

}  // namespace detail

inline OwlqnResult MinimizeOwlqn(
    const SmoothObjective& f, std::vector<double> x, const OwlqnOptions& options,
    const std::function<void(const OwlqnIteration&, std::span<const double>)>& on_iteration = {}) {
  const std::size_t n = x.size();
  std::vector<double> g(n), pg(n), d(n), x_new(n), g_new(n), alpha_buf;
  struct Pair {
    std::vector<double> s, y;
    double rho;
  };
  std::deque<Pair> history;

  double fx = f(x, g);
  double value = fx + options.c1 * detail::L1(x);
  OwlqnResult result;
  const double c1 = options.c1;

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    detail::PseudoGradient(x, g, c1, pg);
    if (detail::Dot(pg, pg) == 0.0) {
      result.stop = OwlqnStop::kZeroGradient;
      break;
    }

    // Two-loop recursion: d = -H * pg.
    for (std::size_t i = 0; i < n; ++i) d[i] = -pg[i];
    alpha_buf.assign(history.size(), 0.0);
    for (std::size_t h = history.size(); h-- > 0;) {
      alpha_buf[h] = history[h].rho * detail::Dot(history[h].s, d);
      for (std::size_t i = 0; i < n; ++i) d[i] -= alpha_buf[h] * history[h].y[i];
    }
    if (!history.empty()) {
      const Pair& last = history.back();
      const double gamma = 1.0 / (last.rho * detail::Dot(last.y, last.y));
      for (double& v : d) v *= gamma;
    }
    for (std::size_t h = 0; h < history.size(); ++h) {
      const double beta = history[h].rho * detail::Dot(history[h].y, d);
      for (std::size_t i = 0; i < n; ++i) d[i] += (alpha_buf[h] - beta) * history[h].s[i];
    }
    if (c1 > 0.0) {
      // Keep only components that agree with the steepest descent direction.
      for (std::size_t i = 0; i < n; ++i) {
        if (d[i] * pg[i] >= 0.0) d[i] = 0.0;
      }
    }
    if (detail::Dot(d, pg) >= 0.0) {
      // Curvature information went stale; restart from steepest descent.
      history.clear();
      for (std::size_t i = 0; i < n; ++i) d[i] = -pg[i];
    }

    double step = 1.0;
    if (iter == 1) step = 1.0 / std::sqrt(detail::Dot(d, d));
    bool accepted = false;
    double fx_new = 0.0;
    double value_new = 0.0;
    int evaluations = 0;
    for (int ls = 0; ls < options.max_linesearch; ++ls) {
      for (std::size_t i = 0; i < n; ++i) {
        x_new[i] = x[i] + step * d[i];
        if (c1 > 0.0) {
          const double orthant = x[i] != 0.0 ? x[i] : -pg[i];
          if (x_new[i] * orthant <= 0.0) x_new[i] = 0.0;
        }
      }
      fx_new = f(x_new, g_new);
      ++evaluations;
      value_new = fx_new + c1 * detail::L1(x_new);
      double directional = 0.0;
      for (std::size_t i = 0; i < n; ++i) directional += pg[i] * (x_new[i] - x[i]);
      if (std::isfinite(value_new) && directional < 0.0 &&
          value_new <= value + 1e-4 * directional) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      result.stop = OwlqnStop::kLineSearchFailed;
      break;
    }

    Pair pair{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      pair.s[i] = x_new[i] - x[i];
      pair.y[i] = g_new[i] - g[i];
    }
    const double sy = detail::Dot(pair.s, pair.y);
    if (sy > 1e-12) {
      pair.rho = 1.0 / sy;
      history.push_back(std::move(pair));
      if (history.size() > static_cast<std::size_t>(options.memory)) history.pop_front();
    }

    const double previous = value;
    x.swap(x_new);
    g.swap(g_new);
    fx = fx_new;
    value = value_new;
    result.iterations = iter;
    if (on_iteration) on_iteration(OwlqnIteration{iter, value, step, evaluations}, x);

    if (std::abs(previous - value) / std::max(std::abs(value), 1.0) <
        options.relative_tolerance) {
      result.stop = OwlqnStop::kConverged;
      break;
    }
  }
  result.x = std::move(x);
  result.value = value;
  return result;
}

}  // namespace nimfasele::crf
