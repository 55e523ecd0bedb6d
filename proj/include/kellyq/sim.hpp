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

// Monte Carlo wealth trajectories for repeated i.i.d. gambles.  Wealth is
// tracked only as log2 of the accumulated growth factor.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "kellyq/entropy.hpp"
#include "kellyq/error.hpp"
#include "kellyq/helper.hpp"
#include "kellyq/kelly.hpp"
#include "kellyq/rng.hpp"
#include "kellyq/roulette.hpp"

namespace kellyq {

struct SimConfig {
  std::uint64_t gambles = 1000;  // K
  std::uint64_t seed = 0;
  std::uint32_t trials = 1;
  std::uint64_t log_every = 1;
  unsigned threads = 1;
};

struct TrajectoryPoint {
  std::uint64_t gamble = 0;
  double log2_wealth = 0.0;
};

struct WealthTrajectory {
  std::vector<TrajectoryPoint> points;
  double empirical_rate = 0.0;  // (1/K) log2 S_K, -infinity on ruin
  double analytic_rate = 0.0;
  bool ruined = false;
  std::uint64_t gambles_played = 0;
};

/// One gamble reduced to its essentials: outcome probabilities and the log2
/// wealth factor each outcome produces.  Every protocol below compiles to one
/// of these.
struct GambleModel {
  ProbVector probs;
  std::vector<double> log_factors;  // -infinity marks a ruinous outcome
  double analytic_rate = 0.0;

  /// Standard deviation of the per-gamble log2 factor.
  double log_stddev() const {
    double var = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i] <= 0.0) continue;
      const double d = log_factors[i] - analytic_rate;
      var += probs[i] * d * d;
    }
    return std::sqrt(var);
  }
};

namespace detail {

inline void require_sim_config(const SimConfig& cfg) {
  if (cfg.gambles < 1) throw Error(ErrorCode::InvalidArgument, "simulation needs at least one gamble");
  if (cfg.trials < 1) throw Error(ErrorCode::InvalidArgument, "simulation needs at least one trial");
  if (cfg.log_every < 1) throw Error(ErrorCode::InvalidArgument, "log_every must be positive");
}

}  // namespace detail

inline GambleModel classical_gamble_model(const ProbVector& p, const BetAllocation& bet, const OddsVector& odds) {
  GambleModel m{p, {}, doubling_rate(p, bet, odds)};
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double factor = bet.q0 + bet.q[i] * odds[i];
    m.log_factors.push_back(factor > 0.0 ? std::log2(factor) : kNegInfinity);
  }
  return m;
}

/// Samples outcomes by inverse CDF over the cumulative distribution in
/// index order.
inline WealthTrajectory simulate(const GambleModel& model, const SimConfig& cfg, std::uint64_t seed) {
  detail::require_sim_config(cfg);
  const std::size_t n = model.probs.size();
  std::vector<double> cdf(n);
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += model.probs[i];
    cdf[i] = acc;
    if (model.probs[i] > 0.0) last_positive = i;
  }

  Xoshiro256 rng(seed);
  WealthTrajectory traj;
  traj.analytic_rate = model.analytic_rate;
  traj.points.push_back({0, 0.0});
  double log_wealth = 0.0;
  for (std::uint64_t k = 1; k <= cfg.gambles; ++k) {
    const double u = rng.uniform();
    std::size_t i = 0;
    while (i < last_positive && !(u < cdf[i])) ++i;
    while (model.probs[i] <= 0.0) ++i;  // never land on an impossible outcome
    const double step = model.log_factors[i];
    traj.gambles_played = k;
    if (std::isinf(step) && step < 0.0) {
      traj.ruined = true;
      traj.empirical_rate = kNegInfinity;
      traj.points.push_back({k, kNegInfinity});
      return traj;
    }
    log_wealth += step;
    if (k % cfg.log_every == 0 || k == cfg.gambles) traj.points.push_back({k, log_wealth});
  }
  traj.empirical_rate = log_wealth / static_cast<double>(cfg.gambles);
  return traj;
}

/// Trial t uses seed cfg.seed + t regardless of scheduling.
inline std::vector<WealthTrajectory> simulate_trials(const GambleModel& model, const SimConfig& cfg) {
  detail::require_sim_config(cfg);
  std::vector<WealthTrajectory> out(cfg.trials);
  const unsigned threads = std::max(1u, cfg.threads);
  auto work = [&](unsigned t0) {
    for (std::size_t t = t0; t < out.size(); t += threads) out[t] = simulate(model, cfg, cfg.seed + t);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  return out;
}

inline WealthTrajectory simulate(const ProbVector& p, const BetAllocation& bet, const OddsVector& odds,
                                 const SimConfig& cfg) {
  return simulate(classical_gamble_model(p, bet, odds), cfg, cfg.seed);
}

/// The state is re-prepared before every gamble, so outcomes are i.i.d. with
/// distribution Tr(rho E_i).
inline WealthTrajectory simulate_quantum(const DensityMatrix& rho, const Measurement& m, const BetAllocation& bet,
                                         const OddsVector& odds, const SimConfig& cfg) {
  return simulate(outcome_probs(rho, m), bet, odds, cfg);
}

// ---------------------------------------------------------------------------
// Helper protocols

/// Bob measures F and reports; Alice measures the fixed E and bets the
/// conditional distribution.
struct Variant1FixedProtocol {
  Measurement f_b;
  Measurement e_a;
  OddsVector odds_a;
};

/// Bob measures F and reports; Alice measures A in the eigenbasis of the
/// collapsed state and bets its eigenvalues (uniform fair odds).
struct Variant1FullControlProtocol {
  Measurement f_b;
  OddsVector odds_a;
};

/// Bob leases B; W_B is deducted from every gamble.
struct Variant2Protocol {
  OddsVector odds_a;
  OddsVector odds_b;
  BobShare mode = BobShare::StarStar;
  std::optional<Variant2Measurements> measurements;
};

using HelperProtocol = std::variant<Variant1FixedProtocol, Variant1FullControlProtocol, Variant2Protocol>;

inline GambleModel helper_gamble_model(const DensityMatrix& rho_ab, BipartiteDims dims, const HelperProtocol& protocol) {
  std::vector<double> probs;
  std::vector<double> logs;
  double analytic = 0.0;
  auto push = [&](double p, double log_factor) {
    probs.push_back(p);
    logs.push_back(p > 0.0 ? log_factor : 0.0);
  };

  if (const auto* v1 = std::get_if<Variant1FixedProtocol>(&protocol)) {
    const ConditionalEnsemble ens = condition_on_b(rho_ab, dims, v1->f_b, &v1->e_a);
    for (std::size_t j = 0; j < ens.betas.size(); ++j) {
      for (std::size_t i = 0; i < v1->e_a.outcomes(); ++i) {
        const double alpha = ens.alphas[j] ? (*ens.alphas[j])[i] : 0.0;
        const double p = ens.states[j] ? ens.betas[j] * alpha : 0.0;
        push(p, std::log2(alpha * v1->odds_a[i]));
      }
    }
    analytic = variant1_rate_fixed_measurements(rho_ab, dims, v1->f_b, v1->e_a, v1->odds_a).w_with_help;
  } else if (const auto* full = std::get_if<Variant1FullControlProtocol>(&protocol)) {
    const double o = detail::require_uniform_odds(full->odds_a, dims.a);
    const ConditionalEnsemble ens = condition_on_b(rho_ab, dims, full->f_b);
    for (std::size_t j = 0; j < ens.betas.size(); ++j) {
      if (!ens.states[j]) {
        for (std::size_t k = 0; k < dims.a; ++k) push(0.0, 0.0);
        continue;
      }
      const std::vector<double> lambda = clamped_spectrum(*ens.states[j]);
      for (double l : lambda) push(ens.betas[j] * l, std::log2(l * o));
    }
    analytic = std::log2(o) - ens.average_entropy();
  } else {
    const auto& v2 = std::get<Variant2Protocol>(protocol);
    const HelperReport report = variant2_rate(rho_ab, dims, v2.odds_a, v2.odds_b, v2.mode, v2.measurements);
    const Measurement& g = *report.ab_measurement;
    const ProbVector p_ab = outcome_probs(rho_ab, g);
    const std::size_t mm = v2.odds_b.size();
    for (std::size_t k = 0; k < p_ab.size(); ++k) {
      const double payoff = v2.odds_a[k / mm] * v2.odds_b[k % mm];
      push(p_ab[k], std::log2(p_ab[k] * payoff) - report.bob_share);
    }
    analytic = report.w;
  }
  return {clamp_probabilities(std::move(probs)), std::move(logs), analytic};
}

inline WealthTrajectory simulate_with_helper(const DensityMatrix& rho_ab, BipartiteDims dims,
                                             const HelperProtocol& protocol, const SimConfig& cfg) {
  return simulate(helper_gamble_model(rho_ab, dims, protocol), cfg, cfg.seed);
}

// ---------------------------------------------------------------------------

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// CSV with header `gamble,log2_wealth`.
inline void write_trajectory_csv(std::ostream& os, const WealthTrajectory& traj) {
  os << "gamble,log2_wealth\n";
  for (const TrajectoryPoint& pt : traj.points) os << pt.gamble << ',' << format_double(pt.log2_wealth) << '\n';
}

}  // namespace kellyq
