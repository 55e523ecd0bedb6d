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

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kellyq/entropy.hpp"
#include "kellyq/error.hpp"
#include "kellyq/kelly.hpp"
#include "kellyq/qmath.hpp"

namespace kellyq::cli {

struct BuiltinInfo {
  std::string name;
  std::string dims;
  std::string description;
};

inline const std::vector<BuiltinInfo>& builtin_catalog() {
  static const std::vector<BuiltinInfo> catalog = {
      {"bell", "2x2", "(|00> + |11>)/sqrt 2, S(A|B) = -1"},
      {"ghz", "2x2x2", "(|000> + |111>)/sqrt 2"},
      {"classical-corr", "2x2", "(|00><00| + |11><11|)/2, zero discord"},
      {"maximally-mixed", "[state] dims, default 2x2", "identity over the total dimension"},
      {"bell-plus-zero", "2x2x2", "bell pair on AB with |0> on C"},
      {"american-roulette", "38x2", "38-slot wheel with a binary hint B; straight-up and dozen games"},
  };
  return catalog;
}

inline std::string list_builtins() {
  std::string out = "builtin scenarios:\n";
  for (const BuiltinInfo& b : builtin_catalog()) {
    out += "  " + b.name + std::string(b.name.size() < 20 ? 20 - b.name.size() : 1, ' ') + b.dims + "  " +
           b.description + "\n";
  }
  return out;
}

struct StateSpec {
  DensityMatrix rho;
  std::vector<std::size_t> dims;
};

namespace detail {

inline Complex sqrt_half() { return 1.0 / std::sqrt(2.0); }

}  // namespace detail

/// `dims` only matters for maximally-mixed.
inline std::optional<StateSpec> builtin_state(const std::string& name, std::vector<std::size_t> dims = {}) {
  const Complex r = detail::sqrt_half();
  if (name == "bell") {
    const Complex k[] = {r, 0, 0, r};
    return StateSpec{DensityMatrix::pure(k), {2, 2}};
  }
  if (name == "ghz") {
    const Complex k[] = {r, 0, 0, 0, 0, 0, 0, r};
    return StateSpec{DensityMatrix::pure(k), {2, 2, 2}};
  }
  if (name == "classical-corr") {
    const double d[] = {0.5, 0.0, 0.0, 0.5};
    return StateSpec{DensityMatrix::diagonal(d), {2, 2}};
  }
  if (name == "maximally-mixed") {
    if (dims.empty()) dims = {2, 2};
    std::size_t total = 1;
    for (std::size_t d : dims) total *= d;
    return StateSpec{DensityMatrix::maximally_mixed(total), dims};
  }
  if (name == "bell-plus-zero") {
    const Complex k[] = {r, 0, 0, 0, 0, 0, r, 0};
    return StateSpec{DensityMatrix::pure(k), {2, 2, 2}};
  }
  return std::nullopt;
}

// American roulette with a helper.  A ranges over {00, 0, 1, ..., 36} in
// that order and B over {0, 1}, each with probability 1/2.  Given B = 0 the
// first 19 slots have probability 2/57 and the last 19 have 1/57; B = 1
// swaps the halves.  The marginal of A is uniform over the 38 slots.

struct RouletteGame {
  std::string name;
  JointDistribution joint;  // rows = A outcomes, cols = B
  OddsVector odds;
};

inline JointDistribution american_roulette_joint() {
  std::vector<double> p;
  for (std::size_t a = 0; a < 38; ++a) {
    const bool first = a < 19;
    p.push_back(0.5 * (first ? 2.0 : 1.0) / 57.0);
    p.push_back(0.5 * (first ? 1.0 : 2.0) / 57.0);
  }
  return {ProbVector(std::move(p)), 38, 2};
}

/// Straight-up: every slot is its own outcome at fair odds 38.
/// Dozen: outcomes {zeros, 1-12, 13-24, 25-36} at the fair odds 1/p.
inline std::vector<RouletteGame> american_roulette_games() {
  const JointDistribution slots = american_roulette_joint();
  std::vector<double> dozen(8, 0.0);
  for (std::size_t a = 0; a < 38; ++a) {
    const std::size_t group = a < 2 ? 0 : 1 + (a - 2) / 12;
    for (std::size_t b = 0; b < 2; ++b) dozen[group * 2 + b] += slots(a, b);
  }
  std::vector<RouletteGame> games;
  games.push_back({"straight_up", slots, OddsVector::uniform(38, 38.0)});
  games.push_back({"dozen", JointDistribution(clamp_probabilities(std::move(dozen)), 4, 2),
                   OddsVector{19.0, 38.0 / 12.0, 38.0 / 12.0, 38.0 / 12.0}});
  return games;
}

}  // namespace kellyq::cli
