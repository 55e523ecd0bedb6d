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

// Two-party helper protocols.  Alice gambles on A; Bob holds B and either
// reports his measurement outcome (variant 1) or leases B to Alice in return
// for a share of her winnings (variant 2).  The gap between the optimised
// rates of the two variants is the quantum discord.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "kellyq/entropy.hpp"
#include "kellyq/error.hpp"
#include "kellyq/kelly.hpp"
#include "kellyq/nelder_mead.hpp"
#include "kellyq/qmath.hpp"
#include "kellyq/rng.hpp"
#include "kellyq/roulette.hpp"

namespace kellyq {

inline constexpr double kNegligibleOutcome = 1e-12;

/// Subsystem dimensions of a bipartite state, A first.
struct BipartiteDims {
  std::size_t a = 0;
  std::size_t b = 0;

  std::size_t total() const { return a * b; }
  std::array<std::size_t, 2> list() const { return {a, b}; }
};

namespace detail {

inline void require_dims(const DensityMatrix& rho, BipartiteDims dims) {
  if (dims.a == 0 || dims.b == 0 || dims.total() != rho.dim()) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(dims.a) + "x" + std::to_string(dims.b) +
                                                  " does not match state of dim " + std::to_string(rho.dim()));
  }
}

inline DensityMatrix reduced_a(const DensityMatrix& rho, BipartiteDims dims) {
  const auto d = dims.list();
  const std::size_t keep[] = {0};
  return partial_trace(rho, d, keep);
}

inline DensityMatrix reduced_b(const DensityMatrix& rho, BipartiteDims dims) {
  const auto d = dims.list();
  const std::size_t keep[] = {1};
  return partial_trace(rho, d, keep);
}

inline ComplexMatrix lift_b(const ComplexMatrix& op_b, std::size_t dim_a) {
  return tensor(ComplexMatrix::identity(dim_a), op_b);
}

inline ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  ComplexMatrix h = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return h;
}

}  // namespace detail

/// States of A conditioned on each outcome of a measurement on B.
struct ConditionalEnsemble {
  std::vector<double> betas;                  // P(B outcome = j)
  std::vector<std::optional<DensityMatrix>> states;  // empty where beta_j < 1e-12
  std::vector<std::optional<ProbVector>> alphas;     // A-outcome distributions, when a fixed A measurement is given

  /// sum_j beta_j S(rho_j) over outcomes with non-negligible weight.
  double average_entropy() const {
    double s = 0.0;
    for (std::size_t j = 0; j < betas.size(); ++j)
      if (states[j]) s += betas[j] * von_neumann_entropy(*states[j]);
    return s;
  }
};

/// rho_j = Tr_B[rho (I (x) F_j^dagger F_j)] / beta_j.  The unnormalised
/// conditional is formed as Tr_B[(I (x) F_j) rho (I (x) F_j^dagger)], which
/// equals the above by cyclicity on B and is Hermitian by construction.
inline ConditionalEnsemble condition_on_b(const DensityMatrix& rho_ab, BipartiteDims dims, const Measurement& f,
                                          const Measurement* e_a = nullptr) {
  detail::require_dims(rho_ab, dims);
  if (f.dim() != dims.b) throw Error(ErrorCode::DimensionMismatch, "measurement on B has the wrong dimension");
  if (e_a && e_a->dim() != dims.a) throw Error(ErrorCode::DimensionMismatch, "measurement on A has the wrong dimension");
  const auto d = dims.list();
  const std::size_t keep_a[] = {0};
  ConditionalEnsemble ens;
  for (const ComplexMatrix& op : f.operators()) {
    const ComplexMatrix k = detail::lift_b(op, dims.a);
    const ComplexMatrix sandwiched = k * rho_ab.matrix() * k.adjoint();
    ComplexMatrix cond = detail::hermitian_part(partial_trace(sandwiched, d, keep_a));
    const double beta = cond.trace().real();
    ens.betas.push_back(std::max(beta, 0.0));
    if (beta < kNegligibleOutcome) {
      ens.states.emplace_back();
      ens.alphas.emplace_back();
      continue;
    }
    cond *= 1.0 / beta;
    DensityMatrix state = validate_density(cond);
    if (e_a) {
      ens.alphas.emplace_back(outcome_probs(state, *e_a));
    } else {
      ens.alphas.emplace_back();
    }
    ens.states.emplace_back(std::move(state));
  }
  return ens;
}

struct Variant1Rates {
  double w_with_help = 0.0;
  double w_without = 0.0;
  double gain = 0.0;
};

/// Variant 1 with measurements fixed: Bob measures F on B and reports j;
/// Alice measures E_j on A (E_j may depend on j) and bets proportionally on
/// the conditional outcome distribution.  The no-help baseline measures
/// `e_without` on rho^A.
inline Variant1Rates variant1_rate_adaptive(const DensityMatrix& rho_ab, BipartiteDims dims, const Measurement& f,
                                            std::span<const Measurement> e_per_outcome, const Measurement& e_without,
                                            const OddsVector& odds_a) {
  if (e_per_outcome.size() != f.outcomes()) {
    throw Error(ErrorCode::LengthMismatch, "need one A measurement per B outcome");
  }
  const ConditionalEnsemble ens = condition_on_b(rho_ab, dims, f);
  Variant1Rates r;
  for (std::size_t j = 0; j < ens.betas.size(); ++j) {
    if (!ens.states[j]) continue;
    const ProbVector alpha = outcome_probs(*ens.states[j], e_per_outcome[j]);
    r.w_with_help += ens.betas[j] * optimize_fair_superfair(alpha, odds_a).w_star;
  }
  const ProbVector pa = outcome_probs(detail::reduced_a(rho_ab, dims), e_without);
  r.w_without = optimize_fair_superfair(pa, odds_a).w_star;
  r.gain = r.w_with_help - r.w_without;
  return r;
}

/// Variant 1 with the same A measurement for every report.  The gain is
/// H(p^A) - sum_j beta_j H(alpha_j) at uniform fair odds and never negative.
inline Variant1Rates variant1_rate_fixed_measurements(const DensityMatrix& rho_ab, BipartiteDims dims,
                                                      const Measurement& f, const Measurement& e,
                                                      const OddsVector& odds_a) {
  const std::vector<Measurement> per(f.outcomes(), e);
  return variant1_rate_adaptive(rho_ab, dims, f, per, e, odds_a);
}

/// rho^{AB} = |0><0| (x) I/2 with B measured in the computational basis.
/// Alice measures A computationally after report 0 but in {|->, |+>} after
/// report 1, and loses half a bit per gamble against ignoring the help.
inline Variant1Rates variant1_negative_gain_demo() {
  const Complex zero[] = {1.0, 0.0};
  const DensityMatrix rho = tensor(DensityMatrix::pure(zero), DensityMatrix::maximally_mixed(2));
  const double r = 1.0 / std::sqrt(2.0);
  const Measurement minus_plus = Measurement::from_basis(ComplexMatrix(2, 2, {r, r, -r, r}));
  const std::vector<Measurement> per = {Measurement::computational(2), minus_plus};
  return variant1_rate_adaptive(rho, {2, 2}, Measurement::computational(2), per, Measurement::computational(2),
                                OddsVector::uniform(2, 2.0));
}

// ---------------------------------------------------------------------------
// Classical correlation: max over rank-1 projective measurements on B of
// S(A) - sum_j beta_j S(rho_j).

struct OptimizerConfig {
  int restarts = 32;
  int max_iterations = 2000;
  double diameter_tol = 1e-8;
  double initial_step = 0.5;
  std::uint64_t seed = 0x6b656c6c79ULL;
  bool grid_seed = true;  // qubit B only: seed restart 0 from a 1-degree Bloch grid
  unsigned threads = 1;
};

struct RestartRecord {
  double best_value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct OptimizerTrace {
  std::vector<RestartRecord> restarts;
  std::size_t best_restart = 0;
  double grid_best = 0.0;  // best Bloch-grid value, qubit B only
};

/// Unitary exp(iH) for the Hermitian generator with diagonal params[0..d-1]
/// followed by (re, im) pairs of the strict upper triangle, row by row.
inline ComplexMatrix unitary_from_generator(std::span<const double> params, std::size_t d) {
  if (params.size() != d * d) throw Error(ErrorCode::LengthMismatch, "generator needs d^2 parameters");
  ComplexMatrix h(d, d);
  std::size_t k = 0;
  for (std::size_t i = 0; i < d; ++i) h(i, i) = params[k++];
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      h(i, j) = Complex(params[k], params[k + 1]);
      h(j, i) = std::conj(h(i, j));
      k += 2;
    }
  return apply_function(h, [](double x) { return std::polar(1.0, x); });
}

/// Generator parameters whose unitary has first column
/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> (qubit only).
inline std::vector<double> bloch_generator(double theta, double phi) {
  return {0.0, 0.0, 0.5 * theta * std::sin(phi), 0.5 * theta * std::cos(phi)};
}

/// Projective measurement on B given by generator parameters.
inline Measurement measurement_from_params(std::span<const double> params, std::size_t dim_b) {
  return Measurement::from_basis(unitary_from_generator(params, dim_b));
}

struct ClassicalCorrelation {
  double value = 0.0;
  Measurement best_measurement = Measurement::trivial(1);
  OptimizerTrace trace;
};

namespace detail {

/// S(A) - sum_j beta_j S(rho_j) for rank-1 projectors onto the columns of u.
inline double correlation_objective(const DensityMatrix& rho_ab, BipartiteDims dims, double s_a,
                                    const ComplexMatrix& u) {
  const auto d = dims.list();
  const std::size_t keep_a[] = {0};
  double avg = 0.0;
  for (std::size_t j = 0; j < dims.b; ++j) {
    const ComplexMatrix proj = lift_b(ComplexMatrix::outer(u.column(j)), dims.a);
    ComplexMatrix cond = hermitian_part(partial_trace(proj * rho_ab.matrix() * proj, d, keep_a));
    const double beta = cond.trace().real();
    if (beta < kNegligibleOutcome) continue;
    cond *= 1.0 / beta;
    std::vector<double> ev = eig_hermitian(cond).eigenvalues;
    avg += beta * shannon_entropy(ev);
  }
  return s_a - avg;
}

}  // namespace detail

inline ClassicalCorrelation classical_correlation(const DensityMatrix& rho_ab, BipartiteDims dims,
                                                  const OptimizerConfig& cfg = {}) {
  detail::require_dims(rho_ab, dims);
  if (cfg.restarts < 1) throw Error(ErrorCode::InvalidArgument, "optimizer needs at least one restart");
  const double s_a = von_neumann_entropy(detail::reduced_a(rho_ab, dims));
  const std::size_t nparams = dims.b * dims.b;

  auto objective = [&](std::span<const double> x) {
    return detail::correlation_objective(rho_ab, dims, s_a, unitary_from_generator(x, dims.b));
  };

  // Starting points are drawn sequentially so the result does not depend on
  // how restarts are scheduled.
  Xoshiro256 rng(cfg.seed);
  std::vector<std::vector<double>> starts(static_cast<std::size_t>(cfg.restarts), std::vector<double>(nparams));
  for (auto& s : starts)
    for (double& x : s) x = rng.uniform(-std::numbers::pi, std::numbers::pi);

  OptimizerTrace trace;
  if (cfg.grid_seed && dims.b == 2) {
    double best = -kInfinity;
    std::vector<double> best_params;
    for (int t = 0; t <= 180; ++t) {
      for (int p = 0; p < 360; ++p) {
        const double theta = t * std::numbers::pi / 180.0;
        const double phi = p * std::numbers::pi / 180.0;
        const double c = std::cos(theta / 2.0);
        const Complex s = std::polar(std::sin(theta / 2.0), phi);
        const ComplexMatrix u(2, 2, {c, -std::conj(s), s, c});
        const double v = detail::correlation_objective(rho_ab, dims, s_a, u);
        if (v > best) {
          best = v;
          best_params = bloch_generator(theta, phi);
        }
        if (t == 0 || t == 180) break;  // poles: phi is irrelevant
      }
    }
    trace.grid_best = best;
    starts.front() = best_params;
  }

  NelderMeadOptions nm;
  nm.max_iterations = cfg.max_iterations;
  nm.diameter_tol = cfg.diameter_tol;
  nm.initial_step = cfg.initial_step;

  std::vector<NelderMeadResult> results(starts.size());
  auto run = [&](std::size_t i) {
    results[i] = nelder_mead(
        [&](const std::vector<double>& x) {
          const double v = objective(x);
          return std::isfinite(v) ? -v : kInfinity;
        },
        starts[i], nm);
  };
  const unsigned threads = std::max(1u, cfg.threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < starts.size(); ++i) run(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < starts.size(); i += threads) run(i);
      });
    for (auto& th : pool) th.join();
  }

  double best = -kInfinity;
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const double v = -results[i].fx;
    trace.restarts.push_back({v, results[i].iterations, results[i].converged});
    if (std::isfinite(v) && v > best) {
      best = v;
      best_idx = i;
    }
  }
  if (!std::isfinite(best)) throw Error(ErrorCode::OptimizerFailed, "every restart diverged");
  trace.best_restart = best_idx;

  ClassicalCorrelation out;
  out.value = best;
  out.best_measurement = measurement_from_params(results[best_idx].x, dims.b);
  out.trace = std::move(trace);
  return out;
}

// ---------------------------------------------------------------------------

/// Outcome of a helper protocol from Alice's point of view.
struct HelperReport {
  double w = 0.0;          // take-home doubling rate with help
  double w_without = 0.0;  // best rate on A alone under the same rules
  double gain = 0.0;
  double bob_share = 0.0;  // W_B surrendered per gamble (variant 2)
  std::optional<Measurement> b_measurement;
  std::optional<Measurement> ab_measurement;
  OptimizedOver optimized_over = OptimizedOver::BetsAndMeasurement;
  OptimizerTrace trace;
};

/// Variant 1 with full control at uniform fair odds: Alice picks Bob's
/// measurement, then measures A in the eigenbasis of each collapsed state.
/// w = log o - S(A) + classical correlation.
inline HelperReport variant1_rate_full_control(const DensityMatrix& rho_ab, BipartiteDims dims,
                                               const OddsVector& odds_a, const OptimizerConfig& cfg = {}) {
  detail::require_dims(rho_ab, dims);
  const double o = detail::require_uniform_odds(odds_a, dims.a);
  ClassicalCorrelation cc = classical_correlation(rho_ab, dims, cfg);
  const double s_a = von_neumann_entropy(detail::reduced_a(rho_ab, dims));
  HelperReport r;
  r.w_without = std::log2(o) - s_a;
  r.w = r.w_without + cc.value;
  r.gain = cc.value;
  r.b_measurement = std::move(cc.best_measurement);
  r.trace = std::move(cc.trace);
  return r;
}

struct MeasureVsOperate {
  double s_after_operation = 0.0;
  double avg_conditional_s = 0.0;
};

/// Compares S(A) after Bob applies the channel with Kraus operators F_j to B
/// against the average entropy of A's collapsed states when Bob measures.
inline MeasureVsOperate measure_vs_operate(const DensityMatrix& rho_ab, BipartiteDims dims, const Measurement& f) {
  detail::require_dims(rho_ab, dims);
  if (f.dim() != dims.b) throw Error(ErrorCode::DimensionMismatch, "measurement on B has the wrong dimension");
  const auto d = dims.list();
  const std::size_t keep_a[] = {0};
  ComplexMatrix out(rho_ab.dim(), rho_ab.dim());
  for (const ComplexMatrix& op : f.operators()) {
    const ComplexMatrix k = detail::lift_b(op, dims.a);
    out += k * rho_ab.matrix() * k.adjoint();
  }
  MeasureVsOperate r;
  r.s_after_operation = von_neumann_entropy(validate_density(partial_trace(out, d, keep_a)));
  r.avg_conditional_s = condition_on_b(rho_ab, dims, f).average_entropy();
  return r;
}

// ---------------------------------------------------------------------------
// Variant 2: Bob leases B.  Payoff for (i, j) is o_i^A o_j^B; Alice keeps
// 2^{-K W_B} of her winnings.

enum class BobShare { Star, StarStar };

/// Measurements for the Star variant.  `ab` outcome (i, j) is index
/// i * |odds_b| + j.  `a` is only used for the no-help baseline.
struct Variant2Measurements {
  Measurement ab;
  Measurement b;
  Measurement a;
};

namespace detail {

inline void require_product_odds_ok(const OddsVector& odds_a, const OddsVector& odds_b) {
  require_not_subfair(odds_a);
  require_not_subfair(odds_b);
}

}  // namespace detail

/// Star: all measurements fixed, Bob's share W*_B evaluated with his own
/// standalone measurement F on B, whose statistics need not match the B
/// marginal of the joint measurement G.
inline HelperReport variant2_rate_star(const DensityMatrix& rho_ab, BipartiteDims dims, const OddsVector& odds_a,
                                       const OddsVector& odds_b, const Variant2Measurements& m) {
  detail::require_dims(rho_ab, dims);
  detail::require_product_odds_ok(odds_a, odds_b);
  const std::size_t n = odds_a.size();
  const std::size_t mm = odds_b.size();
  if (m.ab.dim() != dims.total() || m.b.dim() != dims.b || m.a.dim() != dims.a) {
    throw Error(ErrorCode::DimensionMismatch, "variant-2 measurement dimensions do not match the state");
  }
  if (m.ab.outcomes() != n * mm || m.b.outcomes() != mm || m.a.outcomes() != n) {
    throw Error(ErrorCode::LengthMismatch, "variant-2 measurement outcome counts do not match the odds");
  }
  const ProbVector p_ab = outcome_probs(rho_ab, m.ab);
  std::vector<ComplexMatrix> lifted;
  for (const ComplexMatrix& e : m.b.effects()) lifted.push_back(detail::lift_b(e, dims.a));
  std::vector<double> raw_b;
  for (const ComplexMatrix& e : lifted) raw_b.push_back(trace_product(rho_ab.matrix(), e));
  const ProbVector p_b = clamp_probabilities(std::move(raw_b));

  double log_ab = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < mm; ++j) {
      const double pij = p_ab[i * mm + j];
      if (pij > 0.0) log_ab += pij * std::log2(odds_a[i] * odds_b[j]);
    }
  double log_b = 0.0;
  for (std::size_t j = 0; j < mm; ++j)
    if (p_b[j] > 0.0) log_b += p_b[j] * std::log2(odds_b[j]);

  HelperReport r;
  r.optimized_over = OptimizedOver::BetsOnly;
  r.bob_share = log_b - shannon_entropy(p_b);
  r.w = log_ab - log_b - shannon_entropy(p_ab) + shannon_entropy(p_b);
  r.w_without = optimize_bets(detail::reduced_a(rho_ab, dims), m.a, odds_a).w;
  r.gain = r.w - r.w_without;
  r.ab_measurement = m.ab;
  r.b_measurement = m.b;
  return r;
}

/// StarStar at uniform fair odds: AB and B are measured in their eigenbases,
/// w = log o - S(A|B) and the gain over W**_A is S(A:B).
inline HelperReport variant2_rate_starstar(const DensityMatrix& rho_ab, BipartiteDims dims, const OddsVector& odds_a,
                                           const OddsVector& odds_b) {
  detail::require_dims(rho_ab, dims);
  const double oa = detail::require_uniform_odds(odds_a, dims.a);
  const double ob = detail::require_uniform_odds(odds_b, dims.b);
  const DensityMatrix rho_a = detail::reduced_a(rho_ab, dims);
  const DensityMatrix rho_b = detail::reduced_b(rho_ab, dims);
  const double s_ab = von_neumann_entropy(rho_ab);
  const double s_a = von_neumann_entropy(rho_a);
  const double s_b = von_neumann_entropy(rho_b);

  HelperReport r;
  r.bob_share = std::log2(ob) - s_b;
  r.w = std::log2(oa) + std::log2(ob) - s_ab - r.bob_share;
  r.w_without = std::log2(oa) - s_a;
  r.gain = r.w - r.w_without;
  r.ab_measurement = eigenbasis_measurement(rho_ab);
  r.b_measurement = eigenbasis_measurement(rho_b);
  return r;
}

inline HelperReport variant2_rate(const DensityMatrix& rho_ab, BipartiteDims dims, const OddsVector& odds_a,
                                  const OddsVector& odds_b, BobShare mode,
                                  const std::optional<Variant2Measurements>& measurements = std::nullopt) {
  if (mode == BobShare::StarStar) return variant2_rate_starstar(rho_ab, dims, odds_a, odds_b);
  if (!measurements) throw Error(ErrorCode::InvalidArgument, "Star mode needs fixed measurements");
  return variant2_rate_star(rho_ab, dims, odds_a, odds_b, *measurements);
}

// ---------------------------------------------------------------------------

struct DiscordReport {
  double mutual_info = 0.0;
  double classical_correlation = 0.0;
  double discord = 0.0;
  Measurement best_measurement = Measurement::trivial(1);
  OptimizerTrace trace;
};

/// D(A>B) = S(A:B) - classical correlation.  The optimiser returns a lower
/// bound on the correlation, so this is an upper bound on the discord.
inline DiscordReport discord(const DensityMatrix& rho_ab, BipartiteDims dims, const OptimizerConfig& cfg = {}) {
  detail::require_dims(rho_ab, dims);
  ClassicalCorrelation cc = classical_correlation(rho_ab, dims, cfg);
  DiscordReport r;
  const auto d = dims.list();
  r.mutual_info = quantum_mutual_information(rho_ab, d);
  r.classical_correlation = cc.value;
  r.discord = r.mutual_info - r.classical_correlation;
  r.best_measurement = std::move(cc.best_measurement);
  r.trace = std::move(cc.trace);
  return r;
}

// ---------------------------------------------------------------------------

struct TripartiteDims {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t c = 0;
};

/// Bob holds B for a fraction f of the gambles and C otherwise, taking his
/// W** share each time: w = log o - f S(A|B) - (1 - f) S(A|C).
inline double alternating_helper_rate(const DensityMatrix& rho_abc, TripartiteDims dims, double f,
                                      const OddsVector& odds_a) {
  if (dims.a * dims.b * dims.c != rho_abc.dim() || dims.a == 0) {
    throw Error(ErrorCode::DimensionMismatch, "tripartite dims do not match the state");
  }
  if (!(f >= 0.0 && f <= 1.0)) throw Error(ErrorCode::InvalidArgument, "fraction f must lie in [0, 1]");
  const double o = detail::require_uniform_odds(odds_a, dims.a);
  const std::size_t d[] = {dims.a, dims.b, dims.c};
  const std::size_t keep_ab[] = {0, 1};
  const std::size_t keep_ac[] = {0, 2};
  const DensityMatrix rho_ab = partial_trace(rho_abc, d, keep_ab);
  const DensityMatrix rho_ac = partial_trace(rho_abc, d, keep_ac);
  const std::size_t dab[] = {dims.a, dims.b};
  const std::size_t dac[] = {dims.a, dims.c};
  return std::log2(o) - f * quantum_conditional_entropy(rho_ab, dab) -
         (1.0 - f) * quantum_conditional_entropy(rho_ac, dac);
}

}  // namespace kellyq
