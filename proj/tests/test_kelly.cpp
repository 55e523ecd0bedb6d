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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "kellyq/kelly.hpp"
#include "oracles.hpp"

namespace kellyq {
namespace {

using testing::Rng;

TEST(Odds, RegimeClassification) {
  EXPECT_EQ(classify(OddsVector{2, 2}).kind, OddsKind::Fair);
  EXPECT_EQ(classify(OddsVector{3, 3}).kind, OddsKind::SuperFair);
  EXPECT_EQ(classify(OddsVector{1.5, 1.5}).kind, OddsKind::SubFair);
  EXPECT_EQ(classify(OddsVector{3, 3, 3}).kind, OddsKind::Fair);  // 1/3 * 3 rounds to 1 within tolerance
  EXPECT_THROW(OddsVector({2.0, 0.0}), Error);
  EXPECT_THROW(OddsVector({2.0, -1.0}), Error);
}

TEST(DoublingRate, Examples) {
  EXPECT_EQ(doubling_rate(ProbVector{0.5, 0.5}, BetAllocation::none(2), OddsVector{5, 7}), 0.0);
  EXPECT_EQ(doubling_rate(ProbVector{0.5, 0.5}, BetAllocation(0.0, {0.5, 0.5}), OddsVector{2, 2}), 0.0);
  EXPECT_EQ(doubling_rate(ProbVector{1.0, 0.0}, BetAllocation(0.0, {1.0, 0.0}), OddsVector{2, 2}), 1.0);
}

TEST(DoublingRate, ZeroCoverageIsNegInfinite) {
  EXPECT_EQ(doubling_rate(ProbVector{0.5, 0.5}, BetAllocation(0.0, {1.0, 0.0}), OddsVector{2, 2}), kNegInfinity);
  try {
    doubling_rate(ProbVector{0.5, 0.5}, BetAllocation(0.0, {1.0}), OddsVector{2, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
  }
}

TEST(Proportional, Examples) {
  for (std::size_t n = 2; n <= 6; ++n) {
    const KellySolution s = optimize_fair_superfair(ProbVector::uniform(n), OddsVector::uniform(n, n));
    EXPECT_NEAR(s.w_star, 0.0, 1e-12);
    EXPECT_NEAR(s.w_star + std::log2(n), std::log2(n), 1e-12);
  }
  const KellySolution s = optimize_fair_superfair(ProbVector{0.9, 0.1}, OddsVector{2, 2});
  EXPECT_NEAR(s.w_star, 1.0 - testing::h2(0.1), 1e-12);
  EXPECT_NEAR(s.w_star, 0.5310, 1e-4);
  EXPECT_EQ(s.allocation.q0, 0.0);
  EXPECT_EQ(s.allocation.q, (std::vector<double>{0.9, 0.1}));
  EXPECT_DOUBLE_EQ(optimize_fair_superfair(ProbVector{1.0, 0.0}, OddsVector{2, 2}).w_star, 1.0);
}

TEST(Proportional, RejectsSubFair) {
  try {
    optimize_fair_superfair(ProbVector{0.5, 0.5}, OddsVector{1.5, 1.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongRegime);
  }
}

TEST(Proportional, BeatsRandomAllocations) {
  Rng rng(31);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 2 + rep % 4;
    const ProbVector p(testing::random_simplex(rng, n));
    std::vector<double> inv = testing::random_simplex(rng, n);
    const double scale = 1.0 - 0.3 * testing::unif(rng);  // sum 1/o <= 1
    std::vector<double> o;
    for (double x : inv) o.push_back(1.0 / (x * scale));
    const OddsVector odds(o);
    const double best = optimize_fair_superfair(p, odds).w_star;
    EXPECT_NEAR(best, doubling_rate(p, BetAllocation::proportional(p), odds), 1e-12);
    for (int k = 0; k < 200; ++k) {
      std::vector<double> full = testing::random_simplex(rng, n + 1);
      const BetAllocation bet(full[0], std::vector<double>(full.begin() + 1, full.end()));
      EXPECT_GE(best - doubling_rate(p, bet, odds), -1e-10);
    }
    // Floor from staking 1/o_i and keeping the rest.
    EXPECT_GE(best, std::log2(1.0 / odds.reserve()) - 1e-12);
  }
}

TEST(Proportional, ConservationTheorem) {
  Rng rng(32);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 2 + rep % 7;
    const ProbVector p(testing::random_simplex(rng, n));
    const double w = optimize_fair_superfair(p, OddsVector::uniform(n, static_cast<double>(n))).w_star;
    EXPECT_NEAR(w + shannon_entropy(p), std::log2(static_cast<double>(n)), 1e-12);
  }
}

void expect_threshold_conditions(const ProbVector& p, const OddsVector& o, const KellySubfairSolution& s) {
  EXPECT_LT(s.beta, 1.0);
  const double t = s.threshold();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const bool in = std::find(s.in_set.begin(), s.in_set.end(), i) != s.in_set.end();
    if (in) {
      EXPECT_GT(p[i] * o[i], t) << "i=" << i;
    } else {
      EXPECT_LE(p[i] * o[i], t) << "i=" << i;
    }
  }
  double sigma_sum = 0.0;
  for (double x : s.sigma) sigma_sum += x;
  if (!s.in_set.empty()) {
    EXPECT_NEAR(sigma_sum, 1.0, 1e-10);
  }
}

TEST(SubFair, NoProfitableBet) {
  const ProbVector p{0.5, 0.5};
  const OddsVector o{1, 1};
  const KellySubfairSolution s = optimize_subfair(p, o);
  EXPECT_TRUE(s.in_set.empty());
  EXPECT_EQ(s.allocation.q0, 1.0);
  EXPECT_EQ(s.w_star, 0.0);
  expect_threshold_conditions(p, o, s);
}

TEST(SubFair, MatchesGridOracleBinary) {
  const std::vector<double> pv = {0.9, 0.1}, ov = {1.5, 1.5};
  const KellySubfairSolution s = optimize_subfair(ProbVector(pv), OddsVector(ov));
  const auto q = testing::simplex_grid_argmax([&](const std::vector<double>& f) { return testing::direct_rate(pv, f, ov); }, 2);
  EXPECT_NEAR(s.w_star, testing::direct_rate(pv, q, ov), 1e-6);
  // The closed form and the allocation agree.
  EXPECT_NEAR(s.w_star, doubling_rate(ProbVector(pv), s.allocation, OddsVector(ov)), 1e-10);
  EXPECT_EQ(s.in_set, (std::vector<std::size_t>{0}));
  expect_threshold_conditions(ProbVector(pv), OddsVector(ov), s);
}

TEST(SubFair, MatchesGridOracleTernary) {
  const std::vector<double> pv = {0.6, 0.3, 0.1}, ov = {2, 2, 2};
  const KellySubfairSolution s = optimize_subfair(ProbVector(pv), OddsVector(ov));
  const auto q = testing::simplex_grid_argmax([&](const std::vector<double>& f) { return testing::direct_rate(pv, f, ov); }, 3);
  EXPECT_NEAR(s.w_star, testing::direct_rate(pv, q, ov), 1e-6);
  EXPECT_NEAR(s.w_star, doubling_rate(ProbVector(pv), s.allocation, OddsVector(ov)), 1e-10);
  // Oracle stakes nothing where the solver stakes nothing.
  for (std::size_t i = 0; i < 3; ++i)
    if (s.allocation.q[i] == 0.0) {
      EXPECT_LT(q[i + 1], 1e-4);
    }
  expect_threshold_conditions(ProbVector(pv), OddsVector(ov), s);
}

TEST(SubFair, SetIsReproducibleFromGammaBeta) {
  Rng rng(33);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rep % 6;
    const ProbVector p(testing::random_simplex(rng, n));
    std::vector<double> o;
    for (std::size_t i = 0; i < n; ++i) o.push_back(0.5 + 2.0 * static_cast<double>(n) * testing::unif(rng) / 2.0);
    const OddsVector odds(o);
    if (classify(odds).kind != OddsKind::SubFair) continue;
    const KellySubfairSolution s = optimize_subfair(p, odds);
    expect_threshold_conditions(p, odds, s);
    std::vector<std::size_t> rederived;
    for (std::size_t i = 0; i < n; ++i)
      if (p[i] * odds[i] > s.threshold()) rederived.push_back(i);
    EXPECT_EQ(rederived, s.in_set);
    EXPECT_NEAR(s.w_star, doubling_rate(p, s.allocation, odds), 1e-10);
    EXPECT_GE(s.w_star, -1e-15);
  }
}

TEST(SubFair, RejectsFair) {
  EXPECT_THROW(optimize_subfair(ProbVector{0.5, 0.5}, OddsVector{2, 2}), Error);
}

JointDistribution correlated_binary() { return {ProbVector{0.5, 0.0, 0.0, 0.5}, 2, 2}; }

TEST(ConditionalRate, Examples) {
  const std::vector<double> p = {0.7, 0.3}, q = {0.4, 0.6};
  std::vector<double> joint;
  for (double a : p)
    for (double b : q) joint.push_back(a * b);
  const OddsVector odds{2, 2};
  EXPECT_NEAR(conditional_doubling_rate({ProbVector(joint), 2, 2}, odds),
              optimize_fair_superfair(ProbVector(p), odds).w_star, 1e-12);
  EXPECT_NEAR(conditional_doubling_rate(correlated_binary(), odds), 1.0, 1e-15);
  EXPECT_THROW(conditional_doubling_rate(correlated_binary(), OddsVector{1.5, 1.5}), Error);
}

TEST(ConditionalRate, AmericanRouletteTermByTerm) {
  std::vector<double> joint(76);
  for (std::size_t i = 0; i < 38; ++i) {
    joint[2 * i] = i < 19 ? 2.0 / 114 : 1.0 / 114;
    joint[2 * i + 1] = i < 19 ? 1.0 / 114 : 2.0 / 114;
  }
  const OddsVector odds = OddsVector::uniform(38, 38.0);
  // sum_i p_i log o_i - sum_j p_j H(A | B=j), term by term.
  double oracle = 0.0;
  for (int i = 0; i < 38; ++i) oracle += (1.0 / 38) * std::log2(38.0);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 38; ++i) {
      const double c = joint[2 * i + j] / 0.5;
      oracle += 0.5 * c * std::log2(c);
    }
  EXPECT_NEAR(conditional_doubling_rate({ProbVector(joint), 38, 2}, odds), oracle, 1e-10);
}

TEST(LeaseEquivalence, Examples) {
  const OddsVector o2{2, 2};
  const JointDistribution indep{ProbVector{0.35, 0.35, 0.15, 0.15}, 2, 2};
  const LeaseComparison a = lease_equivalence_check(indep, o2, o2);
  const double w_a = optimize_fair_superfair(ProbVector{0.7, 0.3}, o2).w_star;
  EXPECT_NEAR(a.w_variant1, w_a, 1e-12);
  EXPECT_NEAR(a.w_variant2, w_a, 1e-12);

  const LeaseComparison b = lease_equivalence_check(correlated_binary(), o2, o2);
  EXPECT_NEAR(b.w_variant1, 1.0, 1e-12);
  EXPECT_NEAR(b.w_variant2, 1.0, 1e-12);
}

TEST(LeaseEquivalence, RandomJointsAgree) {
  Rng rng(34);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rep % 3, m = 2 + rep % 2;
    const JointDistribution joint{ProbVector(testing::random_simplex(rng, n * m)), n, m};
    std::vector<double> oa, ob;
    for (double x : testing::random_simplex(rng, n)) oa.push_back(1.0 / x);
    for (double x : testing::random_simplex(rng, m)) ob.push_back(1.0 / (0.9 * x));
    const LeaseComparison c = lease_equivalence_check(joint, OddsVector(oa), OddsVector(ob));
    EXPECT_NEAR(c.w_variant1, c.w_variant2, 1e-10);
  }
}

}  // namespace
}  // namespace kellyq
