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

// Independent reference computations and random fixtures for the test
// suites.  Nothing here calls the optimisers it is used to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "kellyq/qmath.hpp"
#include "kellyq/roulette.hpp"

namespace kellyq::testing {

using Rng = std::mt19937_64;

inline double gauss(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }
inline double unif(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

/// Uniform point on the simplex (normalised exponentials).
inline std::vector<double> random_simplex(Rng& rng, std::size_t n) {
  std::vector<double> p(n);
  double s = 0.0;
  for (double& x : p) {
    x = -std::log(1.0 - unif(rng));
    s += x;
  }
  for (double& x : p) x /= s;
  return p;
}

inline ComplexMatrix ginibre(Rng& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  return g;
}

inline ComplexMatrix random_hermitian(Rng& rng, std::size_t n) {
  const ComplexMatrix g = ginibre(rng, n, n);
  ComplexMatrix h = g + g.adjoint();
  h *= 0.5;
  return h;
}

/// Full-rank random state G G^dagger / Tr.
inline DensityMatrix random_state(Rng& rng, std::size_t n) {
  const ComplexMatrix g = ginibre(rng, n, n);
  ComplexMatrix m = g * g.adjoint();
  m *= 1.0 / m.trace().real();
  return validate_density(m);
}

inline std::vector<Complex> random_ket(Rng& rng, std::size_t n) {
  std::vector<Complex> v(n);
  for (auto& x : v) x = Complex(gauss(rng), gauss(rng));
  return v;
}

/// Gram-Schmidt on a Ginibre matrix.
inline ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
  ComplexMatrix u = ginibre(rng, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex dot{0.0, 0.0};
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(u(i, k)) * u(i, j);
      for (std::size_t i = 0; i < n; ++i) u(i, j) -= dot * u(i, k);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(u(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) u(i, j) /= norm;
  }
  return u;
}

inline Measurement random_projective(Rng& rng, std::size_t n) {
  return Measurement::from_basis(random_unitary(rng, n));
}

/// k >= dim effects S^{-1/2} A_i^dagger A_i S^{-1/2}, S = sum_i A_i^dagger A_i.
inline Measurement random_povm(Rng& rng, std::size_t dim, std::size_t k) {
  std::vector<ComplexMatrix> raw;
  ComplexMatrix s(dim, dim);
  for (std::size_t i = 0; i < k; ++i) {
    const ComplexMatrix a = ginibre(rng, dim, dim);
    raw.push_back(a.adjoint() * a);
    s += raw.back();
  }
  const ComplexMatrix inv_sqrt = apply_function(s, [](double x) { return Complex(1.0 / std::sqrt(x), 0.0); });
  std::vector<ComplexMatrix> effects;
  for (const auto& r : raw) effects.push_back(inv_sqrt * r * inv_sqrt);
  return Measurement::from_effects(effects);
}

/// Tr_B of a 4x4 two-qubit operator by explicit four-index summation,
/// rho^A_{a a'} = sum_b rho_{(a b),(a' b)}.
inline std::array<std::array<Complex, 2>, 2> trace_out_second_qubit(const ComplexMatrix& m) {
  std::array<std::array<Complex, 2>, 2> out{};
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      for (int b = 0; b < 2; ++b) out[a][ap] += m(2 * a + b, 2 * ap + b);
  return out;
}

/// Eigenvalues of a 2x2 Hermitian matrix from the characteristic polynomial.
inline std::array<double, 2> eigenvalues_2x2(double a, double d, Complex b) {
  const double mean = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  return {mean + rad, mean - rad};
}

inline double h2(double x) {
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

inline double entropy_2x2(double a, double d, Complex b) {
  const auto ev = eigenvalues_2x2(a, d, b);
  double s = 0.0;
  for (double x : ev)
    if (x > 1e-15) s -= x * std::log2(x);
  return s;
}

/// Classical correlation of a two-qubit state by exhaustive search over
/// projective measurements {|n>, |-n>} on B on a Bloch-angle grid of the
/// given resolution in degrees.  Conditional states are formed by index
/// sums and diagonalised in closed form.
inline double bloch_grid_classical_correlation(const ComplexMatrix& rho, double step_deg = 1.0) {
  // S(A) by index summation.
  const auto ra = trace_out_second_qubit(rho);
  const double s_a = entropy_2x2(ra[0][0].real(), ra[1][1].real(), ra[0][1]);
  double best = -1.0;
  const int nt = static_cast<int>(std::lround(180.0 / step_deg));
  const int np = static_cast<int>(std::lround(360.0 / step_deg));
  for (int t = 0; t <= nt; ++t) {
    for (int p = 0; p < np; ++p) {
      const double theta = t * step_deg * std::numbers::pi / 180.0;
      const double phi = p * step_deg * std::numbers::pi / 180.0;
      const std::array<Complex, 2> up = {std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)};
      const std::array<Complex, 2> down = {-std::conj(up[1]), std::conj(up[0])};
      double avg = 0.0;
      for (const auto& v : {up, down}) {
        // sigma_{a a'} = sum_{b b'} rho_{(a b),(a' b')} <b'|v><v|b>
        std::array<std::array<Complex, 2>, 2> c{};
        for (int a = 0; a < 2; ++a)
          for (int ap = 0; ap < 2; ++ap)
            for (int b = 0; b < 2; ++b)
              for (int bp = 0; bp < 2; ++bp) c[a][ap] += rho(2 * a + b, 2 * ap + bp) * v[bp] * std::conj(v[b]);
        const double beta = (c[0][0] + c[1][1]).real();
        if (beta < 1e-14) continue;
        avg += beta * entropy_2x2(c[0][0].real() / beta, c[1][1].real() / beta, c[0][1] / beta);
      }
      best = std::max(best, s_a - avg);
      if (t == 0 || t == nt) break;
    }
  }
  return best;
}

/// Maximises the concave doubling rate over the simplex {q0, q_1..q_n}
/// (n = 2 or 3) by a coarse grid followed by repeated zoomed grids around the
/// incumbent, then a coordinate-wise golden-section polish.
inline std::vector<double> simplex_grid_argmax(const std::function<double(const std::vector<double>&)>& w,
                                               std::size_t n) {
  const std::size_t dims = n;  // free coordinates q1..qn, q0 = 1 - sum
  auto value = [&](const std::vector<double>& q) {
    double s = 0.0;
    for (double x : q) {
      if (x < 0.0) return -1e300;
      s += x;
    }
    if (s > 1.0) return -1e300;
    std::vector<double> full(dims + 1);
    full[0] = 1.0 - s;
    std::copy(q.begin(), q.end(), full.begin() + 1);
    const double v = w(full);
    return std::isfinite(v) ? v : -1e300;
  };

  std::vector<double> best(dims, 0.0);
  double best_v = value(best);
  double step = dims == 2 ? 1e-3 : 1e-2;
  const int half = dims == 2 ? 1000 : 100;
  std::vector<double> center(dims, 0.0);
  std::vector<int> idx(dims);
  for (int round = 0; round < 8; ++round) {
    const int lo = round == 0 ? 0 : -10;
    const int hi = round == 0 ? half : 10;
    std::function<void(std::size_t)> rec = [&](std::size_t d) {
      if (d == dims) {
        std::vector<double> q(dims);
        for (std::size_t k = 0; k < dims; ++k) q[k] = center[k] + idx[k] * step;
        const double v = value(q);
        if (v > best_v) {
          best_v = v;
          best = q;
        }
        return;
      }
      for (int i = lo; i <= hi; ++i) {
        idx[d] = i;
        rec(d + 1);
      }
    };
    rec(0);
    center = best;
    step /= 5.0;
  }
  // Golden-section polish along each coordinate.
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int sweep = 0; sweep < 20; ++sweep) {
    for (std::size_t k = 0; k < dims; ++k) {
      double a = std::max(0.0, best[k] - 1e-3), b = best[k] + 1e-3;
      auto f = [&](double x) {
        std::vector<double> q = best;
        q[k] = x;
        return value(q);
      };
      double c = b - g * (b - a), d = a + g * (b - a);
      for (int it = 0; it < 80; ++it) {
        if (f(c) > f(d)) b = d; else a = c;
        c = b - g * (b - a);
        d = a + g * (b - a);
      }
      const double x = 0.5 * (a + b);
      if (f(x) >= best_v) {
        best[k] = x;
        best_v = f(x);
      }
    }
  }
  std::vector<double> full(dims + 1);
  double s = 0.0;
  for (double x : best) s += x;
  full[0] = 1.0 - s;
  std::copy(best.begin(), best.end(), full.begin() + 1);
  return full;
}

/// Direct doubling-rate evaluation, independent of the library.
inline double direct_rate(const std::vector<double>& p, const std::vector<double>& full_q,
                          const std::vector<double>& odds) {
  double w = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    const double f = full_q[0] + full_q[i + 1] * odds[i];
    if (f <= 0.0) return -INFINITY;
    w += p[i] * std::log2(f);
  }
  return w;
}

inline std::vector<Complex> bell_ket() {
  const double r = 1.0 / std::sqrt(2.0);
  return {r, 0.0, 0.0, r};
}

inline DensityMatrix bell_state() { return DensityMatrix::pure(bell_ket()); }

inline DensityMatrix classical_corr_state() {
  const double d[] = {0.5, 0.0, 0.0, 0.5};
  return DensityMatrix::diagonal(d);
}

}  // namespace kellyq::testing
