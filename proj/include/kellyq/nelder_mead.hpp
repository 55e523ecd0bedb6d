// Copyright 2026 The kellyq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Derivative-free Nelder-Mead minimisation with standard coefficients
// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

namespace kellyq {

struct NelderMeadOptions {
  int max_iterations = 2000;
  double diameter_tol = 1e-8;  // stop once every vertex is this close to the best
  double initial_step = 0.5;
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
};

inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> start, const NelderMeadOptions& opts = {}) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> x(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) x[i + 1][i] += opts.initial_step;
  std::vector<double> fx(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fx[i] = f(x[i]);

  std::vector<std::size_t> idx(n + 1);
  auto order = [&] {
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
    std::vector<std::vector<double>> xs(n + 1);
    std::vector<double> fs(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      xs[k] = std::move(x[idx[k]]);
      fs[k] = fx[idx[k]];
    }
    x = std::move(xs);
    fx = std::move(fs);
  };
  auto diameter = [&] {
    double d = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += (x[k][i] - x[0][i]) * (x[k][i] - x[0][i]);
      d = std::max(d, std::sqrt(s));
    }
    return d;
  };
  auto along = [&](const std::vector<double>& from, const std::vector<double>& to, double t) {
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = from[i] + t * (to[i] - from[i]);
    return p;
  };

  NelderMeadResult res;
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    order();
    if (diameter() < opts.diameter_tol) {
      res.converged = true;
      break;
    }
    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += x[k][i] / static_cast<double>(n);

    const std::vector<double> xr = along(centroid, x[n], -1.0);
    const double fr = f(xr);
    if (fr < fx[0]) {
      const std::vector<double> xe = along(centroid, x[n], -2.0);
      const double fe = f(xe);
      if (fe < fr) {
        x[n] = xe;
        fx[n] = fe;
      } else {
        x[n] = xr;
        fx[n] = fr;
      }
      continue;
    }
    if (fr < fx[n - 1]) {
      x[n] = xr;
      fx[n] = fr;
      continue;
    }
    const bool outside = fr < fx[n];
    const std::vector<double> xc = outside ? along(centroid, xr, 0.5) : along(centroid, x[n], 0.5);
    const double fc = f(xc);
    if (fc < (outside ? fr : fx[n])) {
      x[n] = xc;
      fx[n] = fc;
      continue;
    }
    for (std::size_t k = 1; k <= n; ++k) {
      x[k] = along(x[0], x[k], 0.5);
      fx[k] = f(x[k]);
    }
  }
  order();
  res.x = x[0];
  res.fx = fx[0];
  res.iterations = it;
  return res;
}

}  // namespace kellyq
