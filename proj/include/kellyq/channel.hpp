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

// Betting on a channel's input after seeing its output, at odds o_i = 1/p_i.
// The optimal rate is the input-output mutual information; with quantum
// signal states and a POVM at the receiver it is bounded by the Holevo
// information of the ensemble.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "kellyq/entropy.hpp"
#include "kellyq/error.hpp"
#include "kellyq/kelly.hpp"
#include "kellyq/qmath.hpp"
#include "kellyq/roulette.hpp"

namespace kellyq {

struct ClassicalChannel {
  ProbVector input_prior;
  std::vector<ProbVector> transition;  // row i: P(output = . | input = i)

  ClassicalChannel(ProbVector prior, std::vector<ProbVector> rows)
      : input_prior(std::move(prior)), transition(std::move(rows)) {
    if (transition.size() != input_prior.size()) {
      throw Error(ErrorCode::DimensionMismatch, "one transition row is needed per input");
    }
    for (const ProbVector& row : transition) {
      if (row.size() != transition.front().size()) {
        throw Error(ErrorCode::DimensionMismatch, "transition rows differ in length");
      }
    }
  }

  std::size_t inputs() const { return input_prior.size(); }
  std::size_t outputs() const { return transition.front().size(); }

  /// Joint P(input = i, output = j), inputs as rows.
  JointDistribution joint() const {
    std::vector<double> p;
    p.reserve(inputs() * outputs());
    for (std::size_t i = 0; i < inputs(); ++i)
      for (std::size_t j = 0; j < outputs(); ++j) p.push_back(input_prior[i] * transition[i][j]);
    return {clamp_probabilities(std::move(p)), inputs(), outputs()};
  }

  /// The odds the setup is defined for: o_i = 1/p_i.
  OddsVector odds() const {
    std::vector<double> o;
    for (double p : input_prior) o.push_back(1.0 / p);
    return OddsVector(std::move(o));
  }
};

namespace detail {

inline void require_positive_prior(const ClassicalChannel& ch) {
  for (std::size_t i = 0; i < ch.inputs(); ++i) {
    if (ch.input_prior[i] <= 0.0) {
      throw Error(ErrorCode::ZeroPriorWithSupport,
                  "input " + std::to_string(i) + " has zero prior but reachable outputs; odds 1/p_i are undefined");
    }
  }
}

}  // namespace detail

/// W = sum_{i,j} q_j q_{i|j} log(q_{i|j} / p_i), betting q_{i|j} on input i
/// after output j.
inline double kelly_channel_rate(const ClassicalChannel& ch) {
  detail::require_positive_prior(ch);
  const JointDistribution joint = ch.joint();
  const std::vector<double> q_out = joint.col_marginal();
  double w = 0.0;
  for (std::size_t j = 0; j < ch.outputs(); ++j) {
    if (q_out[j] <= 0.0) continue;
    for (std::size_t i = 0; i < ch.inputs(); ++i) {
      const double q_ij = joint(i, j) / q_out[j];
      if (q_ij > 0.0) w += q_out[j] * q_ij * std::log2(q_ij / ch.input_prior[i]);
    }
  }
  return w;
}

/// Same rate with explicit odds; anything other than o_i = 1/p_i is refused
/// since the mutual-information identity depends on it.
inline double kelly_channel_rate(const ClassicalChannel& ch, const OddsVector& odds) {
  detail::require_positive_prior(ch);
  if (odds.size() != ch.inputs()) throw Error(ErrorCode::LengthMismatch, "one odds entry is needed per input");
  for (std::size_t i = 0; i < ch.inputs(); ++i) {
    if (std::abs(odds[i] * ch.input_prior[i] - 1.0) > 1e-12) {
      throw Error(ErrorCode::InvalidOdds, "channel gambling requires o_i = 1/p_i (input " + std::to_string(i) + ")");
    }
  }
  return kelly_channel_rate(ch);
}

/// Signal states rho_i sent with prior p_i.
struct QuantumEnsemble {
  ProbVector priors;
  std::vector<DensityMatrix> states;

  QuantumEnsemble(ProbVector p, std::vector<DensityMatrix> s) : priors(std::move(p)), states(std::move(s)) {
    if (states.size() != priors.size() || states.empty()) {
      throw Error(ErrorCode::DimensionMismatch, "one state is needed per prior");
    }
    for (const DensityMatrix& rho : states) {
      if (rho.dim() != states.front().dim()) throw Error(ErrorCode::DimensionMismatch, "ensemble states differ in dim");
    }
  }

  std::size_t dim() const { return states.front().dim(); }

  DensityMatrix average() const {
    ComplexMatrix avg(dim(), dim());
    for (std::size_t i = 0; i < states.size(); ++i) avg += states[i].matrix() * Complex(priors[i], 0.0);
    return validate_density(avg);
  }
};

/// Channel induced by measuring each signal state: p_{j|i} = Tr(rho_i Lambda_j).
inline ClassicalChannel induced_channel(const QuantumEnsemble& ens, const Measurement& povm) {
  if (povm.dim() != ens.dim()) throw Error(ErrorCode::DimensionMismatch, "POVM and ensemble dims differ");
  std::vector<ProbVector> rows;
  for (const DensityMatrix& rho : ens.states) rows.push_back(outcome_probs(rho, povm));
  return {ens.priors, std::move(rows)};
}

inline double quantum_channel_rate(const QuantumEnsemble& ens, const Measurement& povm) {
  return kelly_channel_rate(induced_channel(ens, povm));
}

/// chi = S(sum_i p_i rho_i) - sum_i p_i S(rho_i).
inline double holevo_information(const QuantumEnsemble& ens) {
  double avg_s = 0.0;
  for (std::size_t i = 0; i < ens.states.size(); ++i) avg_s += ens.priors[i] * von_neumann_entropy(ens.states[i]);
  return von_neumann_entropy(ens.average()) - avg_s;
}

}  // namespace kellyq
