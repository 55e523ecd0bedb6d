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

// Experiment driver behind `kellyq run`.  evaluate() turns a Config into a
// list of named quantities; run() adds file output and exit codes.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kellyq/channel.hpp"
#include "kellyq/cli/builtins.hpp"
#include "kellyq/cli/config.hpp"
#include "kellyq/helper.hpp"
#include "kellyq/kelly.hpp"
#include "kellyq/roulette.hpp"
#include "kellyq/sim.hpp"

namespace kellyq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitOptimizer = 3;

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::OptimizerFailed:
    case ErrorCode::NoConvergence:
      return kExitOptimizer;
    default:
      return kExitInvalid;
  }
}

struct Evaluation {
  std::string kind;
  std::vector<std::string> notes;                       // free text for report.txt
  std::vector<std::pair<std::string, double>> results;  // results.csv rows, in order
  std::optional<WealthTrajectory> trajectory;

  void add(std::string name, double value) { results.emplace_back(std::move(name), value); }

  double value(const std::string& name) const {
    for (const auto& [k, v] : results)
      if (k == name) return v;
    throw Error(ErrorCode::InvalidArgument, "no result named '" + name + "'");
  }
};

namespace detail {

/// Runs f, prefixing any library error with the config field it came from.
template <class F>
auto at_field(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    throw Error(e.code(), path + ": " + e.detail());
  }
}

inline std::vector<std::size_t> parse_dims(const Config& c, const std::string& path) {
  std::vector<std::size_t> dims;
  for (double d : c.get_doubles(path)) {
    if (!(d >= 1.0) || d != std::floor(d)) {
      throw Error(ErrorCode::ConfigError, where(path, c.require(path).line) + ": dimensions must be positive integers");
    }
    dims.push_back(static_cast<std::size_t>(d));
  }
  return dims;
}

inline StateSpec load_state(const Config& c) {
  std::vector<std::size_t> dims;
  if (c.has("state.dims")) dims = parse_dims(c, "state.dims");
  if (const ConfigValue* b = c.find("state.builtin")) {
    auto found = builtin_state(b->text, dims);
    if (!found) throw Error(ErrorCode::ConfigError, where("state.builtin", b->line) + ": unknown builtin '" + b->text + "'");
    return *found;
  }
  const ComplexMatrix m = c.get_matrix("state.row");
  DensityMatrix rho = at_field("state.row", [&] { return validate_density(m); });
  if (dims.empty()) dims = {rho.dim()};
  const std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (total != rho.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "state.dims: product " + std::to_string(total) +
                                                  " does not match the matrix dimension " + std::to_string(rho.dim()));
  }
  return {std::move(rho), std::move(dims)};
}

inline BipartiteDims bipartite(const StateSpec& s) {
  if (s.dims.size() != 2) throw Error(ErrorCode::DimensionMismatch, "state.dims: expected two subsystems");
  return {s.dims[0], s.dims[1]};
}

/// `uniform:o` or an explicit list of n entries.
inline OddsVector load_odds(const Config& c, const std::string& path, std::size_t n,
                            std::optional<double> fallback_uniform = std::nullopt) {
  const ConfigValue* v = c.find(path);
  if (!v) {
    if (fallback_uniform) return OddsVector::uniform(n, *fallback_uniform);
    throw Error(ErrorCode::ConfigError, path + ": required key is missing");
  }
  return at_field(where(path, v->line), [&] {
    if (v->text.rfind("uniform:", 0) == 0) {
      double o = 0.0;
      if (!kellyq::detail::parse_double(trim(v->text.substr(8)), o)) {
        throw Error(ErrorCode::ConfigError, where(path, v->line) + ": malformed uniform odds");
      }
      return OddsVector::uniform(n, o);
    }
    std::vector<double> list = Config::parse_doubles(path, *v);
    if (list.size() != n) {
      throw Error(ErrorCode::LengthMismatch, std::to_string(list.size()) + " odds for " + std::to_string(n) + " outcomes");
    }
    return OddsVector(std::move(list));
  });
}

/// computational | hadamard | eigenbasis | trivial.
inline Measurement load_measurement(const Config& c, const std::string& path, std::size_t dim,
                                    const DensityMatrix* eigen_of = nullptr,
                                    const std::string& fallback = "computational") {
  const ConfigValue* v = c.find(path);
  const std::string name = v ? v->text : fallback;
  const std::string loc = v ? where(path, v->line) : path;
  if (name == "computational") return Measurement::computational(dim);
  if (name == "trivial") return Measurement::trivial(dim);
  if (name == "hadamard") {
    if (dim != 2) throw Error(ErrorCode::DimensionMismatch, loc + ": hadamard basis needs a qubit");
    return Measurement::hadamard_basis();
  }
  if (name == "eigenbasis" && eigen_of) {
    if (eigen_of->dim() != dim) throw Error(ErrorCode::DimensionMismatch, loc + ": eigenbasis of the wrong system");
    return eigenbasis_measurement(*eigen_of);
  }
  throw Error(ErrorCode::ConfigError, loc + ": unknown measurement '" + name + "'");
}

inline OptimizerConfig load_optimizer(const Config& c) {
  OptimizerConfig o;
  o.seed = c.get_uint("experiment.seed", o.seed);
  o.restarts = static_cast<int>(c.get_uint("optimizer.restarts", static_cast<std::uint64_t>(o.restarts)));
  o.max_iterations = static_cast<int>(c.get_uint("optimizer.max_iterations", static_cast<std::uint64_t>(o.max_iterations)));
  o.diameter_tol = c.get_double("optimizer.diameter_tol", o.diameter_tol);
  o.threads = static_cast<unsigned>(c.get_uint("optimizer.threads", o.threads));
  o.grid_seed = c.get_string("optimizer.grid_seed", "true") != "false";
  if (o.restarts < 1) throw Error(ErrorCode::ConfigError, "optimizer.restarts: need at least one restart");
  return o;
}

inline SimConfig load_sim(const Config& c) {
  SimConfig s;
  s.seed = c.get_uint("experiment.seed", OptimizerConfig{}.seed);
  s.gambles = c.get_uint("sim.gambles", 100000);
  s.trials = static_cast<std::uint32_t>(c.get_uint("sim.trials", 1));
  s.log_every = c.get_uint("sim.log_every", 1000);
  s.threads = static_cast<unsigned>(c.get_uint("sim.threads", 1));
  return s;
}

inline BobShare load_mode(const Config& c) {
  const ConfigValue* v = c.find("variant2.mode");
  if (!v || v->text == "starstar") return BobShare::StarStar;
  if (v->text == "star") return BobShare::Star;
  throw Error(ErrorCode::ConfigError, where("variant2.mode", v->line) + ": expected star or starstar");
}

inline Variant2Measurements load_star_measurements(const Config& c, const StateSpec& s) {
  const BipartiteDims d = bipartite(s);
  return {load_measurement(c, "measurement.ab", d.total()), load_measurement(c, "measurement.b", d.b),
          load_measurement(c, "measurement.a", d.a)};
}

inline std::string dims_text(const std::vector<std::size_t>& dims) {
  std::string t;
  for (std::size_t i = 0; i < dims.size(); ++i) t += (i ? "x" : "") + std::to_string(dims[i]);
  return t;
}

inline void add_allocation(Evaluation& ev, const std::string& prefix, const BetAllocation& bet) {
  ev.add(prefix + "q0", bet.q0);
  for (std::size_t i = 0; i < bet.q.size(); ++i) ev.add(prefix + "q" + std::to_string(i + 1), bet.q[i]);
}

// --- experiment kinds -------------------------------------------------------

inline void run_classical_kelly(const Config& c, Evaluation& ev) {
  if (const ConfigValue* b = c.find("distribution.builtin")) {
    if (b->text != "american-roulette") {
      throw Error(ErrorCode::ConfigError, where("distribution.builtin", b->line) + ": unknown distribution '" + b->text + "'");
    }
    const JointDistribution slots = american_roulette_joint();
    ev.notes.push_back("american roulette: A over {00, 0, 1..36}, binary hint B");
    ev.add("h_a", shannon_entropy(std::span<const double>(slots.row_marginal())));
    ev.add("h_a_given_b", classical_conditional_entropy(slots));
    for (const RouletteGame& g : american_roulette_games()) {
      const double without = optimize_bets(ProbVector(g.joint.row_marginal()), g.odds).w_star;
      const double with = conditional_doubling_rate(g.joint, g.odds);
      ev.add(g.name + ".w_without_help", without);
      ev.add(g.name + ".w_with_help", with);
      ev.add(g.name + ".gain", with - without);
    }
    return;
  }
  const ConfigValue& pv = c.require("distribution.probs");
  const std::vector<double> raw = Config::parse_doubles("distribution.probs", pv);
  ProbVector probs = at_field(where("distribution.probs", pv.line), [&] { return ProbVector(raw); });
  if (c.has("distribution.shape")) {
    const std::vector<std::size_t> shape = parse_dims(c, "distribution.shape");
    if (shape.size() != 2) throw Error(ErrorCode::ConfigError, "distribution.shape: expected two sizes");
    const JointDistribution joint = at_field("distribution.shape", [&] { return JointDistribution(probs, shape[0], shape[1]); });
    const OddsVector odds = load_odds(c, "odds.a", shape[0]);
    const KellySolution alone = at_field("odds.a", [&] { return optimize_bets(ProbVector(joint.row_marginal()), odds); });
    const double with = at_field("odds.a", [&] { return conditional_doubling_rate(joint, odds); });
    ev.add("w_without_help", alone.w_star);
    ev.add("w_with_help", with);
    ev.add("gain", with - alone.w_star);
    ev.add("h_a_given_b", classical_conditional_entropy(joint));
    return;
  }
  const OddsVector odds = load_odds(c, "odds.a", probs.size());
  const OddsRegime regime = classify(odds);
  ev.notes.push_back("odds regime: " + std::string(to_string(regime.kind)));
  const KellySolution sol = at_field("odds.a", [&] { return optimize_bets(probs, odds); });
  ev.add("w_star", sol.w_star);
  ev.add("h_p", shannon_entropy(probs));
  ev.add("odds_reserve", regime.reserve);
  add_allocation(ev, "", sol.allocation);
}

inline void run_quantum_roulette(const Config& c, Evaluation& ev) {
  const StateSpec s = load_state(c);
  const std::size_t n = s.rho.dim();
  const OddsVector odds = load_odds(c, "odds.a", n, static_cast<double>(n));
  ev.add("s_rho", von_neumann_entropy(s.rho));
  if (c.has("measurement.a")) {
    const Measurement m = load_measurement(c, "measurement.a", n, &s.rho);
    const GambleReport fixed = at_field("measurement.a", [&] { return optimize_bets(s.rho, m, odds); });
    ev.add("w_star", fixed.w);
    for (std::size_t i = 0; i < fixed.probs.size(); ++i) ev.add("p" + std::to_string(i + 1), fixed.probs[i]);
  }
  const GambleReport best = at_field("odds.a", [&] { return optimize_bets_and_measurement(s.rho, odds); });
  ev.add("w_star_star", best.w);
}

inline void run_helper_variant1(const Config& c, Evaluation& ev) {
  const StateSpec s = load_state(c);
  const BipartiteDims d = bipartite(s);
  const OddsVector odds = load_odds(c, "odds.a", d.a, static_cast<double>(d.a));
  const Measurement f = load_measurement(c, "measurement.b", d.b);
  const Measurement e = load_measurement(c, "measurement.a", d.a);
  const Variant1Rates fixed = at_field("odds.a", [&] { return variant1_rate_fixed_measurements(s.rho, d, f, e, odds); });
  ev.add("fixed.w_with_help", fixed.w_with_help);
  ev.add("fixed.w_without_help", fixed.w_without);
  ev.add("fixed.gain", fixed.gain);
  const OptimizerConfig opt = load_optimizer(c);
  const HelperReport full = at_field("odds.a", [&] { return variant1_rate_full_control(s.rho, d, odds, opt); });
  ev.add("full.w_with_help", full.w);
  ev.add("full.w_without_help", full.w_without);
  ev.add("full.gain", full.gain);
  ev.notes.push_back("optimizer best restart: " + std::to_string(full.trace.best_restart));
}

inline void run_helper_variant2(const Config& c, Evaluation& ev) {
  const StateSpec s = load_state(c);
  const BipartiteDims d = bipartite(s);
  const OddsVector oa = load_odds(c, "odds.a", d.a, static_cast<double>(d.a));
  const OddsVector ob = load_odds(c, "odds.b", d.b, static_cast<double>(d.b));
  const BobShare mode = load_mode(c);
  std::optional<Variant2Measurements> m;
  if (mode == BobShare::Star) m = load_star_measurements(c, s);
  const HelperReport r = at_field("odds", [&] { return variant2_rate(s.rho, d, oa, ob, mode, m); });
  ev.notes.push_back(std::string("bob share mode: ") + (mode == BobShare::Star ? "star" : "starstar"));
  ev.add("w", r.w);
  ev.add("w_without_help", r.w_without);
  ev.add("gain", r.gain);
  ev.add("bob_share", r.bob_share);
  const std::size_t dd[] = {d.a, d.b};
  ev.add("s_a_given_b", quantum_conditional_entropy(s.rho, dd));
  ev.add("mutual_information", quantum_mutual_information(s.rho, dd));
}

inline void run_discord(const Config& c, Evaluation& ev) {
  const StateSpec s = load_state(c);
  const BipartiteDims d = bipartite(s);
  const OptimizerConfig opt = load_optimizer(c);
  const DiscordReport r = discord(s.rho, d, opt);
  ev.add("mutual_information", r.mutual_info);
  ev.add("classical_correlation", r.classical_correlation);
  ev.add("discord", r.discord);
  const OddsVector oa = load_odds(c, "odds.a", d.a, static_cast<double>(d.a));
  const OddsVector ob = load_odds(c, "odds.b", d.b, static_cast<double>(d.b));
  const double w2 = at_field("odds", [&] { return variant2_rate(s.rho, d, oa, ob, BobShare::StarStar).w; });
  const double w1 = variant1_rate_full_control(s.rho, d, oa, opt).w;
  ev.add("variant2_w", w2);
  ev.add("variant1_w", w1);
  ev.add("variant_gap", w2 - w1);
  ev.notes.push_back("search space: rank-1 projective measurements on B");
}

inline void run_alternating(const Config& c, Evaluation& ev) {
  const StateSpec s = load_state(c);
  if (s.dims.size() != 3) throw Error(ErrorCode::DimensionMismatch, "state.dims: expected three subsystems");
  const TripartiteDims d{s.dims[0], s.dims[1], s.dims[2]};
  const double f = c.get_double("alternating.f", 0.5);
  const OddsVector odds = load_odds(c, "odds.a", d.a, static_cast<double>(d.a));
  ev.add("f", f);
  ev.add("w", at_field("alternating.f", [&] { return alternating_helper_rate(s.rho, d, f, odds); }));
  const std::size_t d3[] = {d.a, d.b, d.c};
  const std::size_t keep_ab[] = {0, 1};
  const std::size_t keep_ac[] = {0, 2};
  const std::size_t dab[] = {d.a, d.b};
  const std::size_t dac[] = {d.a, d.c};
  ev.add("s_a_given_b", quantum_conditional_entropy(partial_trace(s.rho, d3, keep_ab), dab));
  ev.add("s_a_given_c", quantum_conditional_entropy(partial_trace(s.rho, d3, keep_ac), dac));
}

inline void run_channel(const Config& c, Evaluation& ev) {
  const ConfigValue& pv = c.require("channel.priors");
  ProbVector prior = at_field(where("channel.priors", pv.line), [&] { return ProbVector(Config::parse_doubles("channel.priors", pv)); });
  if (c.has("channel.transition")) {
    std::vector<ProbVector> rows;
    for (const ConfigValue& r : c.all("channel.transition")) {
      rows.push_back(at_field(where("channel.transition", r.line), [&] { return ProbVector(Config::parse_doubles("channel.transition", r)); }));
    }
    const ClassicalChannel ch = at_field("channel.transition", [&] { return ClassicalChannel(prior, rows); });
    ev.add("kelly_channel_rate", at_field("channel.priors", [&] { return kelly_channel_rate(ch); }));
    return;
  }
  std::vector<DensityMatrix> states;
  for (const ConfigValue& k : c.all("channel.ket")) {
    const std::string loc = where("channel.ket", k.line);
    std::vector<Complex> ket;
    try {
      ket = parse_complex_row(k.text);
    } catch (const Error& e) {
      throw Error(ErrorCode::ConfigError, loc + ": " + e.detail());
    }
    states.push_back(at_field(loc, [&] { return DensityMatrix::pure(ket); }));
  }
  if (states.empty()) throw Error(ErrorCode::ConfigError, "channel: give transition rows or ket states");
  const QuantumEnsemble ens = at_field("channel.ket", [&] { return QuantumEnsemble(prior, states); });
  const Measurement m = load_measurement(c, "channel.measurement", ens.dim());
  ev.add("quantum_channel_rate", at_field("channel.priors", [&] { return quantum_channel_rate(ens, m); }));
  ev.add("holevo_information", holevo_information(ens));
}

inline GambleModel simulation_model(const Config& c, Evaluation& ev) {
  const std::string source = c.get_string("simulate.source", "classical");
  ev.notes.push_back("simulation source: " + source);
  if (source == "classical") {
    const ConfigValue& pv = c.require("distribution.probs");
    ProbVector probs = at_field(where("distribution.probs", pv.line), [&] { return ProbVector(Config::parse_doubles("distribution.probs", pv)); });
    const OddsVector odds = load_odds(c, "odds.a", probs.size());
    const std::string bet = c.get_string("simulate.bet", "kelly");
    if (bet == "kelly") return classical_gamble_model(probs, optimize_bets(probs, odds).allocation, odds);
    if (bet == "proportional") return classical_gamble_model(probs, BetAllocation::proportional(probs), odds);
    throw Error(ErrorCode::ConfigError, "simulate.bet: expected kelly or proportional");
  }
  const StateSpec s = load_state(c);
  if (source == "quantum") {
    const OddsVector odds = load_odds(c, "odds.a", s.rho.dim(), static_cast<double>(s.rho.dim()));
    const Measurement m = load_measurement(c, "measurement.a", s.rho.dim(), &s.rho, "eigenbasis");
    const ProbVector p = outcome_probs(s.rho, m);
    return classical_gamble_model(p, at_field("odds.a", [&] { return optimize_bets(p, odds); }).allocation, odds);
  }
  const BipartiteDims d = bipartite(s);
  if (source == "helper-variant1") {
    const OddsVector odds = load_odds(c, "odds.a", d.a, static_cast<double>(d.a));
    return helper_gamble_model(s.rho, d,
                               Variant1FixedProtocol{load_measurement(c, "measurement.b", d.b),
                                                     load_measurement(c, "measurement.a", d.a), odds});
  }
  if (source == "helper-variant1-full") {
    const OddsVector odds = load_odds(c, "odds.a", d.a, static_cast<double>(d.a));
    return helper_gamble_model(s.rho, d, Variant1FullControlProtocol{load_measurement(c, "measurement.b", d.b), odds});
  }
  if (source == "helper-variant2") {
    Variant2Protocol p{load_odds(c, "odds.a", d.a, static_cast<double>(d.a)),
                       load_odds(c, "odds.b", d.b, static_cast<double>(d.b)), load_mode(c), std::nullopt};
    if (p.mode == BobShare::Star) p.measurements = load_star_measurements(c, s);
    return helper_gamble_model(s.rho, d, p);
  }
  throw Error(ErrorCode::ConfigError, "simulate.source: unknown source '" + source + "'");
}

inline void run_simulate(const Config& c, Evaluation& ev) {
  const GambleModel model = simulation_model(c, ev);
  const SimConfig cfg = load_sim(c);
  std::vector<WealthTrajectory> trials = simulate_trials(model, cfg);
  double sum = 0.0;
  std::size_t ruined = 0;
  for (const WealthTrajectory& t : trials) {
    sum += t.empirical_rate;
    ruined += t.ruined ? 1 : 0;
  }
  const double mean = sum / static_cast<double>(trials.size());
  ev.add("analytic_rate", model.analytic_rate);
  ev.add("empirical_rate_mean", mean);
  ev.add("per_gamble_log_stddev", model.log_stddev());
  ev.add("gambles", static_cast<double>(cfg.gambles));
  ev.add("ruined_trials", static_cast<double>(ruined));
  for (std::size_t t = 0; t < trials.size(); ++t) ev.add("empirical_rate.trial" + std::to_string(t), trials[t].empirical_rate);
  ev.trajectory = std::move(trials.front());
}

}  // namespace detail

inline const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds = {"classical-kelly", "quantum-roulette", "helper-variant1",
                                                 "helper-variant2", "discord",          "alternating",
                                                 "channel",         "simulate"};
  return kinds;
}

inline Evaluation evaluate(const Config& c) {
  Evaluation ev;
  const ConfigValue& kind = c.require("experiment.kind");
  ev.kind = kind.text;
  if (kind.text == "classical-kelly") detail::run_classical_kelly(c, ev);
  else if (kind.text == "quantum-roulette") detail::run_quantum_roulette(c, ev);
  else if (kind.text == "helper-variant1") detail::run_helper_variant1(c, ev);
  else if (kind.text == "helper-variant2") detail::run_helper_variant2(c, ev);
  else if (kind.text == "discord") detail::run_discord(c, ev);
  else if (kind.text == "alternating") detail::run_alternating(c, ev);
  else if (kind.text == "channel") detail::run_channel(c, ev);
  else if (kind.text == "simulate") detail::run_simulate(c, ev);
  else throw Error(ErrorCode::ConfigError, where("experiment.kind", kind.line) + ": unknown kind '" + kind.text + "'");
  return ev;
}

inline std::string format_report(const Evaluation& ev, const std::string& source) {
  std::ostringstream os;
  os << "kellyq experiment: " << ev.kind << "\n";
  os << "config: " << source << "\n";
  for (const std::string& n : ev.notes) os << n << "\n";
  os << "\n";
  std::size_t width = 8;
  for (const auto& [k, v] : ev.results) width = std::max(width, k.size());
  for (const auto& [k, v] : ev.results) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    os << k << std::string(width - k.size() + 1, ' ') << "= " << buf << "\n";
  }
  return os.str();
}

inline void write_results_csv(std::ostream& os, const Evaluation& ev) {
  os << "quantity,value\n";
  for (const auto& [k, v] : ev.results) os << k << ',' << format_double(v) << '\n';
}

/// Loads, evaluates and writes report.txt, results.csv and (for simulations)
/// trajectory.csv into out_dir.  Errors go to `err`; returns the exit code.
inline int run(const std::string& config_path, const std::string& out_dir, const std::vector<std::string>& overrides,
               std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    Config c = Config::load(config_path);
    for (const std::string& o : overrides) c.apply_override(o);
    const Evaluation ev = evaluate(c);

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    const std::string report = format_report(ev, config_path);
    std::ofstream(dir / "report.txt") << report;
    std::ofstream csv(dir / "results.csv");
    write_results_csv(csv, ev);
    if (ev.trajectory) {
      std::ofstream traj(dir / "trajectory.csv");
      write_trajectory_csv(traj, *ev.trajectory);
    }
    if (!csv) throw std::runtime_error("cannot write to output directory '" + out_dir + "'");
    out << report;
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace kellyq::cli
