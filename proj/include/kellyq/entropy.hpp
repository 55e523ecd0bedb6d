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

// Classical and quantum entropy functionals.  All logarithms are base 2 and
// 0 log 0 is taken to be 0.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kellyq/error.hpp"
#include "kellyq/qmath.hpp"

namespace kellyq {

inline constexpr double kProbSumTol = 1e-10;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A probability mass function: entries >= 0 summing to 1 within 1e-10.
class ProbVector {
 public:
  ProbVector() = default;
  explicit ProbVector(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw Error(ErrorCode::InvalidProbability, "empty probability vector");
    double sum = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      const double p = probs_[i];
      if (!(p >= 0.0) || p > 1.0 + kProbSumTol) {
        std::ostringstream os;
        os.precision(17);
        os << "entry " << i << " = " << p << " outside [0, 1]";
        throw Error(ErrorCode::InvalidProbability, os.str());
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kProbSumTol) {
      std::ostringstream os;
      os.precision(17);
      os << "probabilities sum to " << sum;
      throw Error(ErrorCode::InvalidProbability, os.str());
    }
  }
  ProbVector(std::initializer_list<double> probs) : ProbVector(std::vector<double>(probs)) {}

  static ProbVector uniform(std::size_t n) { return ProbVector(std::vector<double>(n, 1.0 / static_cast<double>(n))); }

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> values() const noexcept { return probs_; }
  auto begin() const noexcept { return probs_.begin(); }
  auto end() const noexcept { return probs_.end(); }

 private:
  std::vector<double> probs_;
};

/// Clamps entries in [-1e-10, 0) to zero and renormalizes when the total is
/// within `renorm_tol` of one.  Anything worse is left for ProbVector to reject.
inline ProbVector clamp_probabilities(std::vector<double> raw, double renorm_tol = 1e-9) {
  double sum = 0.0;
  for (double& p : raw) {
    if (p < 0.0 && p >= -kPsdTol) p = 0.0;
    sum += p;
  }
  if (std::abs(sum - 1.0) <= renorm_tol && sum > 0.0) {
    for (double& p : raw) p /= sum;
  }
  return ProbVector(std::move(raw));
}

inline double xlogx(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

inline double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) h -= xlogx(x);
  return h;
}

inline double shannon_entropy(const ProbVector& p) { return shannon_entropy(p.values()); }

/// D(p||q) in bits; +infinity when supp(p) is not contained in supp(q).
inline double relative_entropy(const ProbVector& p, const ProbVector& q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "relative_entropy lengths " + std::to_string(p.size()) + " and " + std::to_string(q.size()));
  }
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return kInfinity;
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return d;
}

/// Eigenvalues of a state with values in [-1e-10, 0) clamped to zero.
inline std::vector<double> clamped_spectrum(const DensityMatrix& rho) {
  std::vector<double> ev = eig_hermitian(rho.matrix()).eigenvalues;
  for (double& x : ev) {
    if (x < -kPsdTol) {
      throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(x) + " below clamping window");
    }
    if (x < 0.0) x = 0.0;
  }
  return ev;
}

inline double von_neumann_entropy(const DensityMatrix& rho) { return shannon_entropy(clamped_spectrum(rho)); }

namespace detail {

inline void require_bipartite(const DensityMatrix& rho, std::span<const std::size_t> dims) {
  if (dims.size() != 2 || dims[0] * dims[1] != rho.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "bipartite dims do not match state of dim " + std::to_string(rho.dim()));
  }
}

}  // namespace detail

/// S(A|B) = S(AB) - S(B) for dims = {dim A, dim B}.
inline double quantum_conditional_entropy(const DensityMatrix& rho_ab, std::span<const std::size_t> dims) {
  detail::require_bipartite(rho_ab, dims);
  const std::size_t b[] = {1};
  return von_neumann_entropy(rho_ab) - von_neumann_entropy(partial_trace(rho_ab, dims, b));
}

/// S(A:B) = S(A) - S(A|B).
inline double quantum_mutual_information(const DensityMatrix& rho_ab, std::span<const std::size_t> dims) {
  detail::require_bipartite(rho_ab, dims);
  const std::size_t a[] = {0};
  return von_neumann_entropy(partial_trace(rho_ab, dims, a)) - quantum_conditional_entropy(rho_ab, dims);
}

/// A joint distribution over (i, j), i < rows, j < cols, stored row-major at
/// index i * cols + j.
struct JointDistribution {
  ProbVector probs;
  std::size_t rows = 0;
  std::size_t cols = 0;

  JointDistribution(ProbVector p, std::size_t n, std::size_t m) : probs(std::move(p)), rows(n), cols(m) {
    if (probs.size() != n * m) {
      throw Error(ErrorCode::DimensionMismatch, "joint of size " + std::to_string(probs.size()) + " is not " +
                                                    std::to_string(n) + "x" + std::to_string(m));
    }
  }

  double operator()(std::size_t i, std::size_t j) const { return probs[i * cols + j]; }

  std::vector<double> row_marginal() const {
    std::vector<double> p(rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) p[i] += (*this)(i, j);
    return p;
  }

  std::vector<double> col_marginal() const {
    std::vector<double> p(cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) p[j] += (*this)(i, j);
    return p;
  }

  /// P(row = . | col = j); empty when P(col = j) = 0.
  std::vector<double> row_given_col(std::size_t j) const {
    const double pj = col_marginal()[j];
    if (pj <= 0.0) return {};
    std::vector<double> c(rows);
    for (std::size_t i = 0; i < rows; ++i) c[i] = (*this)(i, j) / pj;
    return c;
  }
};

/// H(A|B) = sum_j p_j H(A | B = j) with A indexing rows and B columns.
inline double classical_conditional_entropy(const JointDistribution& joint) {
  const std::vector<double> pb = joint.col_marginal();
  double h = 0.0;
  for (std::size_t j = 0; j < joint.cols; ++j) {
    if (pb[j] <= 0.0) continue;
    h += pb[j] * shannon_entropy(joint.row_given_col(j));
  }
  return h;
}

inline double classical_conditional_entropy(const ProbVector& joint, std::size_t n, std::size_t m) {
  return classical_conditional_entropy(JointDistribution(joint, n, m));
}

}  // namespace kellyq
