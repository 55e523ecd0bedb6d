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

// Gambling on measurement outcomes of a single quantum system.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kellyq/entropy.hpp"
#include "kellyq/error.hpp"
#include "kellyq/kelly.hpp"
#include "kellyq/qmath.hpp"

namespace kellyq {

inline constexpr double kCompletenessTol = 1e-9;

enum class MeasurementKind { Projective, Povm };

/// A complete measurement.  Projective operators E_i are the effects
/// themselves; POVM operators F_j have effects F_j^dagger F_j.
class Measurement {
 public:
  Measurement(MeasurementKind kind, std::vector<ComplexMatrix> operators)
      : kind_(kind), operators_(std::move(operators)) {
    validate();
  }

  static Measurement projective(std::vector<ComplexMatrix> projectors) {
    return {MeasurementKind::Projective, std::move(projectors)};
  }
  static Measurement povm(std::vector<ComplexMatrix> kraus) { return {MeasurementKind::Povm, std::move(kraus)}; }

  /// Rank-1 projectors onto the columns of a unitary.
  static Measurement from_basis(const ComplexMatrix& unitary) {
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < unitary.cols(); ++k) ops.push_back(ComplexMatrix::outer(unitary.column(k)));
    return projective(std::move(ops));
  }

  static Measurement computational(std::size_t dim) { return from_basis(ComplexMatrix::identity(dim)); }

  /// Qubit basis {|+>, |->}.
  static Measurement hadamard_basis() {
    const double r = 1.0 / std::sqrt(2.0);
    return from_basis(ComplexMatrix(2, 2, {r, r, r, -r}));
  }

  static Measurement trivial(std::size_t dim) { return projective({ComplexMatrix::identity(dim)}); }

  /// POVM with the given effects, realised by Kraus operators sqrt(effect).
  static Measurement from_effects(const std::vector<ComplexMatrix>& effects) {
    std::vector<ComplexMatrix> kraus;
    for (const ComplexMatrix& e : effects)
      kraus.push_back(apply_function(e, [](double x) { return Complex(std::sqrt(std::max(x, 0.0)), 0.0); }));
    return povm(std::move(kraus));
  }

  MeasurementKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return operators_.front().rows(); }
  std::size_t outcomes() const noexcept { return operators_.size(); }
  const std::vector<ComplexMatrix>& operators() const noexcept { return operators_; }

  /// Positive operator whose trace against a state gives the outcome probability.
  ComplexMatrix effect(std::size_t i) const {
    return kind_ == MeasurementKind::Projective ? operators_[i] : operators_[i].adjoint() * operators_[i];
  }

  std::vector<ComplexMatrix> effects() const {
    std::vector<ComplexMatrix> out;
    for (std::size_t i = 0; i < outcomes(); ++i) out.push_back(effect(i));
    return out;
  }

 private:
  void validate() const {
    if (operators_.empty()) throw Error(ErrorCode::CompletenessViolated, "measurement has no operators");
    const std::size_t d = operators_.front().rows();
    for (const ComplexMatrix& op : operators_) {
      if (!op.is_square() || op.rows() != d) {
        throw Error(ErrorCode::DimensionMismatch, "measurement operators must all be " + std::to_string(d) + "x" +
                                                      std::to_string(d));
      }
    }
    ComplexMatrix total(d, d);
    for (std::size_t i = 0; i < operators_.size(); ++i) total += effect(i);
    const double err = max_abs_diff(total, ComplexMatrix::identity(d));
    if (err > kCompletenessTol) {
      throw Error(ErrorCode::CompletenessViolated, "sum of effects deviates from identity by " + std::to_string(err));
    }
    if (kind_ != MeasurementKind::Projective) return;
    for (std::size_t i = 0; i < operators_.size(); ++i) {
      if (hermiticity_error(operators_[i]) > kCompletenessTol) {
        throw Error(ErrorCode::CompletenessViolated, "projector " + std::to_string(i) + " is not Hermitian");
      }
      for (std::size_t j = 0; j < operators_.size(); ++j) {
        const ComplexMatrix prod = operators_[i] * operators_[j];
        const ComplexMatrix expect = i == j ? operators_[i] : ComplexMatrix(d, d);
        if (max_abs_diff(prod, expect) > kCompletenessTol) {
          throw Error(ErrorCode::CompletenessViolated,
                      "projectors " + std::to_string(i) + ", " + std::to_string(j) + " are not orthogonal idempotents");
        }
      }
    }
  }

  MeasurementKind kind_;
  std::vector<ComplexMatrix> operators_;
};

/// Real part of Tr(a b) without forming the product.
inline double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t.real();
}

/// p_i = Tr(rho E_i).
inline ProbVector outcome_probs(const DensityMatrix& rho, const Measurement& m) {
  if (rho.dim() != m.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "state dim " + std::to_string(rho.dim()) + " vs measurement dim " +
                                                  std::to_string(m.dim()));
  }
  std::vector<double> p;
  p.reserve(m.outcomes());
  for (std::size_t i = 0; i < m.outcomes(); ++i) p.push_back(trace_product(rho.matrix(), m.effect(i)));
  return clamp_probabilities(std::move(p));
}

/// Measurement in the eigenbasis of rho (rank-1, descending eigenvalues).
inline Measurement eigenbasis_measurement(const DensityMatrix& rho) {
  return Measurement::from_basis(eig_hermitian(rho.matrix()).eigenvectors);
}

enum class OptimizedOver { BetsOnly, BetsAndMeasurement };

struct GambleReport {
  ProbVector probs;
  BetAllocation allocation;
  Measurement measurement;
  OddsVector odds;
  double w = 0.0;
  OptimizedOver optimized_over = OptimizedOver::BetsOnly;
};

/// W*: proportional betting on the outcome distribution of a fixed measurement.
inline GambleReport optimize_bets(const DensityMatrix& rho, const Measurement& m, const OddsVector& odds) {
  ProbVector p = outcome_probs(rho, m);
  KellySolution s = optimize_fair_superfair(p, odds);
  return {std::move(p), std::move(s.allocation), m, odds, s.w_star, OptimizedOver::BetsOnly};
}

namespace detail {

inline double require_uniform_odds(const OddsVector& odds, std::size_t n) {
  if (odds.size() != n) {
    throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(n) + " odds, got " + std::to_string(odds.size()));
  }
  if (!odds.is_uniform()) throw Error(ErrorCode::NonUniformOdds, "odds must be identical across outcomes");
  require_not_subfair(odds);
  return odds[0];
}

}  // namespace detail

/// W** = log o - S(rho), attained by measuring in the eigenbasis of rho and
/// betting the eigenvalues.
inline GambleReport optimize_bets_and_measurement(const DensityMatrix& rho, const OddsVector& odds) {
  detail::require_uniform_odds(odds, rho.dim());
  Measurement m = eigenbasis_measurement(rho);
  ProbVector p = outcome_probs(rho, m);
  KellySolution s = optimize_fair_superfair(p, odds);
  return {std::move(p), std::move(s.allocation), std::move(m), odds, s.w_star, OptimizedOver::BetsAndMeasurement};
}

}  // namespace kellyq
