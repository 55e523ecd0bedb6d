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

// Classical log-optimal (Kelly) gambling: doubling rates, proportional
// betting at fair and super-fair odds, the sub-fair solution, and the two
// classical side-information variants.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kellyq/entropy.hpp"
#include "kellyq/error.hpp"

namespace kellyq {

inline constexpr double kRegimeTol = 1e-12;
inline constexpr double kAllocationTol = 1e-10;
inline constexpr double kNegInfinity = -kInfinity;

/// Payoffs o_i-for-1, one per outcome.
class OddsVector {
 public:
  OddsVector() = default;
  explicit OddsVector(std::vector<double> odds) : odds_(std::move(odds)) {
    if (odds_.empty()) throw Error(ErrorCode::InvalidOdds, "empty odds vector");
    for (std::size_t i = 0; i < odds_.size(); ++i) {
      if (!(odds_[i] > 0.0) || !std::isfinite(odds_[i])) {
        throw Error(ErrorCode::InvalidOdds, "odds entry " + std::to_string(i) + " must be positive and finite");
      }
    }
  }
  OddsVector(std::initializer_list<double> odds) : OddsVector(std::vector<double>(odds)) {}

  static OddsVector uniform(std::size_t n, double o) { return OddsVector(std::vector<double>(n, o)); }

  std::size_t size() const noexcept { return odds_.size(); }
  double operator[](std::size_t i) const { return odds_[i]; }
  std::span<const double> values() const noexcept { return odds_; }

  /// sum_i 1/o_i
  double reserve() const {
    double r = 0.0;
    for (double o : odds_) r += 1.0 / o;
    return r;
  }

  bool is_uniform() const {
    return std::all_of(odds_.begin(), odds_.end(), [&](double o) { return o == odds_.front(); });
  }

 private:
  std::vector<double> odds_;
};

enum class OddsKind { SuperFair, Fair, SubFair };

constexpr std::string_view to_string(OddsKind k) {
  switch (k) {
    case OddsKind::SuperFair: return "super-fair";
    case OddsKind::Fair: return "fair";
    case OddsKind::SubFair: return "sub-fair";
  }
  return "?";
}

struct OddsRegime {
  OddsKind kind;
  double reserve;
};

inline OddsRegime classify(const OddsVector& odds) {
  const double r = odds.reserve();
  if (std::abs(r - 1.0) <= kRegimeTol) return {OddsKind::Fair, r};
  return {r < 1.0 ? OddsKind::SuperFair : OddsKind::SubFair, r};
}

/// Wealth fractions: q0 retained, q[i] staked on outcome i.
struct BetAllocation {
  double q0 = 1.0;
  std::vector<double> q;

  BetAllocation() = default;
  BetAllocation(double retained, std::vector<double> stakes) : q0(retained), q(std::move(stakes)) {
    double sum = q0;
    if (q0 < 0.0) throw Error(ErrorCode::InvalidArgument, "retained fraction is negative");
    for (double x : q) {
      if (x < 0.0) throw Error(ErrorCode::InvalidArgument, "negative stake");
      sum += x;
    }
    if (std::abs(sum - 1.0) > kAllocationTol) {
      std::ostringstream os;
      os.precision(17);
      os << "allocation sums to " << sum;
      throw Error(ErrorCode::InvalidArgument, os.str());
    }
  }

  static BetAllocation proportional(const ProbVector& p) { return {0.0, std::vector<double>(p.begin(), p.end())}; }
  static BetAllocation none(std::size_t n) { return {1.0, std::vector<double>(n, 0.0)}; }
};

/// W = sum_i p_i log(q0 + q_i o_i).  Returns -infinity when an outcome with
/// positive probability leaves zero wealth.
inline double doubling_rate(const ProbVector& p, const BetAllocation& bet, const OddsVector& odds) {
  if (p.size() != bet.q.size() || p.size() != odds.size()) {
    throw Error(ErrorCode::LengthMismatch, "doubling_rate: probabilities, stakes and odds differ in length");
  }
  double w = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    const double factor = bet.q0 + bet.q[i] * odds[i];
    if (factor <= 0.0) return kNegInfinity;
    w += p[i] * std::log2(factor);
  }
  return w;
}

struct KellySolution {
  BetAllocation allocation;
  double w_star = 0.0;
};

namespace detail {

inline void require_same_length(const ProbVector& p, const OddsVector& odds) {
  if (p.size() != odds.size()) {
    throw Error(ErrorCode::LengthMismatch, "probabilities (" + std::to_string(p.size()) + ") and odds (" +
                                               std::to_string(odds.size()) + ") differ in length");
  }
}

inline void require_not_subfair(const OddsVector& odds) {
  const OddsRegime r = classify(odds);
  if (r.kind == OddsKind::SubFair) {
    throw Error(ErrorCode::WrongRegime, "odds are sub-fair (sum 1/o = " + std::to_string(r.reserve) + ")");
  }
}

inline double expected_log_odds(std::span<const double> p, const OddsVector& odds) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) s += p[i] * std::log2(odds[i]);
  return s;
}

}  // namespace detail

/// Proportional gambling: q = p, q0 = 0, W* = sum p_i log o_i - H(p).
inline KellySolution optimize_fair_superfair(const ProbVector& p, const OddsVector& odds) {
  detail::require_same_length(p, odds);
  detail::require_not_subfair(odds);
  return {BetAllocation::proportional(p), detail::expected_log_odds(p.values(), odds) - shannon_entropy(p)};
}

struct KellySubfairSolution {
  std::vector<std::size_t> in_set;  // ascending outcome indices
  double gamma = 0.0;               // sum of p_i over the set
  double beta = 0.0;                // sum of 1/o_i over the set
  std::vector<double> sigma;        // 1/(beta o_i), aligned with in_set
  BetAllocation allocation;
  double w_star = 0.0;

  /// (1 - gamma)/(1 - beta): the bet/no-bet cutoff on p_i o_i.
  double threshold() const { return (1.0 - gamma) / (1.0 - beta); }
};

/// The betting set is grown greedily in order of decreasing p_i o_i (ties by
/// index) while the next candidate clears the current cutoff.  Stakes are
/// q_i = p_i - cutoff / o_i on the set, zero elsewhere, and q0 = cutoff.
inline KellySubfairSolution optimize_subfair(const ProbVector& p, const OddsVector& odds) {
  detail::require_same_length(p, odds);
  const OddsRegime regime = classify(odds);
  if (regime.kind != OddsKind::SubFair) {
    throw Error(ErrorCode::WrongRegime, std::string("odds are ") + std::string(to_string(regime.kind)) +
                                            ", not sub-fair");
  }
  const std::size_t n = p.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p[a] * odds[a] > p[b] * odds[b]; });

  KellySubfairSolution sol;
  for (std::size_t k : order) {
    const double cutoff = sol.threshold();
    if (!(p[k] * odds[k] > cutoff)) break;
    if (sol.beta + 1.0 / odds[k] >= 1.0) break;
    sol.in_set.push_back(k);
    sol.gamma += p[k];
    sol.beta += 1.0 / odds[k];
  }
  std::sort(sol.in_set.begin(), sol.in_set.end());

  const double cutoff = sol.threshold();
  std::vector<double> q(n, 0.0);
  double staked = 0.0;
  for (std::size_t i : sol.in_set) {
    q[i] = p[i] - cutoff / odds[i];
    staked += q[i];
    sol.sigma.push_back(1.0 / (sol.beta * odds[i]));
  }
  sol.allocation = BetAllocation(1.0 - staked, std::move(q));

  // W* = gamma D(p'||sigma) + D([gamma, 1-gamma] || [beta, 1-beta])
  double w = 0.0;
  if (!sol.in_set.empty()) {
    std::vector<double> conditional;
    for (std::size_t i : sol.in_set) conditional.push_back(p[i] / sol.gamma);
    w += sol.gamma * relative_entropy(clamp_probabilities(conditional), clamp_probabilities(sol.sigma));
  }
  w += relative_entropy(clamp_probabilities({sol.gamma, 1.0 - sol.gamma}), clamp_probabilities({sol.beta, 1.0 - sol.beta}));
  sol.w_star = w;
  return sol;
}

/// Dispatches on the odds regime.
inline KellySolution optimize_bets(const ProbVector& p, const OddsVector& odds) {
  if (classify(odds).kind == OddsKind::SubFair) {
    KellySubfairSolution s = optimize_subfair(p, odds);
    return {std::move(s.allocation), s.w_star};
  }
  return optimize_fair_superfair(p, odds);
}

/// Side information reported by a helper: bet P(A = i | B = j) on each report.
/// W*_{A|B} = sum_i p_i log o_i - H(A|B), with A indexing the joint's rows.
inline double conditional_doubling_rate(const JointDistribution& joint, const OddsVector& odds_a) {
  if (odds_a.size() != joint.rows) throw Error(ErrorCode::LengthMismatch, "odds do not match the A outcomes");
  detail::require_not_subfair(odds_a);
  return detail::expected_log_odds(joint.row_marginal(), odds_a) - classical_conditional_entropy(joint);
}

struct LeaseComparison {
  double w_variant1 = 0.0;  // helper reports B
  double w_variant2 = 0.0;  // helper leases B: W*_{A,B} - W*_B
};

/// Evaluates both helper variants.  Variant 2 gambles on (A, B) at product
/// odds o_i^A o_j^B and surrenders the B-only rate W*_B.
inline LeaseComparison lease_equivalence_check(const JointDistribution& joint, const OddsVector& odds_a,
                                               const OddsVector& odds_b) {
  if (odds_b.size() != joint.cols) throw Error(ErrorCode::LengthMismatch, "odds do not match the B outcomes");
  LeaseComparison out;
  out.w_variant1 = conditional_doubling_rate(joint, odds_a);

  std::vector<double> product_odds;
  product_odds.reserve(joint.rows * joint.cols);
  for (std::size_t i = 0; i < joint.rows; ++i)
    for (std::size_t j = 0; j < joint.cols; ++j) product_odds.push_back(odds_a[i] * odds_b[j]);
  const OddsVector ab_odds(std::move(product_odds));
  detail::require_not_subfair(ab_odds);
  detail::require_not_subfair(odds_b);

  const double w_ab = optimize_fair_superfair(joint.probs, ab_odds).w_star;
  const ProbVector pb = clamp_probabilities(joint.col_marginal());
  const double w_b = optimize_fair_superfair(pb, odds_b).w_star;
  out.w_variant2 = w_ab - w_b;
  return out;
}

}  // namespace kellyq
