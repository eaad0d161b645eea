// Copyright 2026 The Stackel Authors
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

#include <cstdint>
#include <limits>
#include <vector>

#include "stackel/discretize.hpp"
#include "support/corpus.hpp"
#include "support/fixtures.hpp"

namespace {

namespace dz = stackel::discretize;
using stackel::BimatrixGame;
using stackel::testing::two_by_two_commitment_game;

// Independent 2-row search: p = i/k on the first row, every column within
// `slack` of the best follower value, maximum leader value.
double two_row_grid_value(const BimatrixGame& g, std::uint64_t k, double slack) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i <= k; ++i) {
    const double p = static_cast<double>(i) / static_cast<double>(k);
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < g.m; ++j) top = std::max(top, p * g.uF[0][j] + (1 - p) * g.uF[1][j]);
    for (std::size_t j = 0; j < g.m; ++j) {
      if (p * g.uF[0][j] + (1 - p) * g.uF[1][j] >= top - slack - 1e-12) {
        best = std::max(best, p * g.uL[0][j] + (1 - p) * g.uL[1][j]);
      }
    }
  }
  return best;
}

TEST(GridParams, Construction) {
  EXPECT_EQ(dz::GridParams::from_ratio(1, 4).k, 4U);
  EXPECT_EQ(dz::GridParams::from_ratio(2, 10).k, 5U);
  EXPECT_THROW(dz::GridParams::from_ratio(2, 5), stackel::InputError);
  EXPECT_THROW(dz::GridParams::from_ratio(0, 5), stackel::InputError);
  EXPECT_EQ(dz::GridParams::from_eps(0.25).k, 4U);
  EXPECT_EQ(dz::GridParams::from_eps(0.01).k, 100U);
  EXPECT_THROW(dz::GridParams::from_eps(0.3), stackel::InputError);
  EXPECT_THROW(dz::GridParams::from_eps(0.0), stackel::InputError);
  EXPECT_THROW(dz::GridParams::from_eps(1.5), stackel::InputError);
  EXPECT_THROW(dz::GridParams{0}.validate(), stackel::InputError);
}

TEST(GridSize, Binomials) {
  EXPECT_EQ(dz::grid_size(2, {2}), 3U);
  EXPECT_EQ(dz::grid_size(3, {2}), 6U);
  EXPECT_EQ(dz::grid_size(3, {10}), 66U);
  EXPECT_EQ(dz::grid_size(1, {100}), 1U);
  EXPECT_EQ(dz::grid_size(5, {100}), 4598126U);  // C(104, 4)
  EXPECT_EQ(dz::grid_size(200, {1000000}), std::numeric_limits<std::uint64_t>::max());
  EXPECT_THROW(dz::grid_size(0, {1}), stackel::InputError);
}

TEST(GridPoints, OrderAndCount) {
  std::vector<std::vector<std::uint64_t>> seen;
  dz::for_each_grid_point(2, {2}, [&](const std::vector<std::uint64_t>& p) { seen.push_back(p); });
  EXPECT_EQ(seen, (std::vector<std::vector<std::uint64_t>>{{0, 2}, {1, 1}, {2, 0}}));
  const auto pts = dz::grid_strategies(3, {2});
  ASSERT_EQ(pts.size(), 6U);
  for (const auto& s : pts) {
    double total = 0.0;
    for (double v : s.probs) total += v;
    EXPECT_DOUBLE_EQ(total, 1.0);
  }
  EXPECT_EQ(dz::grid_strategies(4, {7}).size(), dz::grid_size(4, {7}));
}

TEST(GridPoints, CapEnforced) {
  EXPECT_THROW(dz::grid_strategies(3, {10}, 65), stackel::LimitError);
  EXPECT_NO_THROW(dz::grid_strategies(3, {10}, 66));
}

TEST(MaxAbsPayoff, CommitmentGame) { EXPECT_EQ(dz::max_abs_payoff(two_by_two_commitment_game()), 10.0); }

TEST(AlmostBestResponses, SlackAdmitsBoth) {
  const auto g = two_by_two_commitment_game();
  const stackel::MixedStrategy x{{0.7, 0.3}};
  EXPECT_EQ(dz::almost_best_responses(g, x, 0.4), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(dz::almost_best_responses(g, x, 0.3), (std::vector<std::size_t>{0}));
  EXPECT_THROW(dz::almost_best_responses(g, x, -1.0), stackel::InputError);
}

TEST(DiscretizedSe, SingleCell) {
  const BimatrixGame g({{5.0}}, {{3.0}});
  const auto sol = dz::discretized_se(g, {4});
  EXPECT_EQ(sol.leaderPayoff, 5.0);
  EXPECT_EQ(sol.followerPayoff, 3.0);
  EXPECT_EQ(sol.gridSize, 1U);
}

// p(U) = 0.7 keeps R within 2 * 2 * 0.01 * 10 = 0.4 of L, so the leader
// collects 0.7 * 10 + 0.3 * 5 = 8.5 against R.
TEST(DiscretizedSe, CommitmentGameFineGrid) {
  const auto g = two_by_two_commitment_game();
  const auto sol = dz::discretized_se(g, {100});
  EXPECT_NEAR(sol.slack, 0.4, 1e-15);
  EXPECT_EQ(sol.M, 10.0);
  EXPECT_EQ(sol.gridSize, 101U);
  EXPECT_EQ(sol.numerators, (std::vector<std::uint64_t>{70, 30}));
  EXPECT_EQ(sol.followerResponse, 1U);
  EXPECT_NEAR(sol.leaderPayoff, 8.5, 1e-12);
  EXPECT_NEAR(sol.leaderPayoff, two_row_grid_value(g, 100, sol.slack), 1e-12);
  EXPECT_TRUE(dz::verify_eps_approx(g, sol, 7.5));
}

TEST(DiscretizedSe, MatchesTwoRowOracle) {
  for (std::size_t m : {2U, 3U, 4U}) {
    for (const auto& g : stackel::testing::bimatrix_corpus(2, m, 30, 77)) {
      for (std::uint64_t k : {1U, 4U, 10U}) {
        const auto sol = dz::discretized_se(g, {k});
        EXPECT_NEAR(sol.leaderPayoff, two_row_grid_value(g, k, sol.slack), 1e-12);
      }
    }
  }
}

TEST(DiscretizedSe, BoundHoldsOnRandomGames) {
  for (const auto& g : stackel::testing::bimatrix_corpus(3, 3, 30, 78)) {
    const auto sol = dz::discretized_se(g, {10});
    const double exact = stackel::solve_stackelberg(g).leaderPayoff;
    EXPECT_LE(sol.slack, 0.6 + 1e-12);
    EXPECT_TRUE(dz::verify_eps_approx(g, sol, exact));
    // Every grid point admits at least its exact best response.
    EXPECT_GE(sol.candidatesExamined, sol.gridSize);
  }
}

TEST(VerifyEpsApprox, RejectsTamperedSolutions) {
  const auto g = two_by_two_commitment_game();
  auto sol = dz::discretized_se(g, {100});
  auto bad = sol;
  bad.leaderPayoff += 1.0;
  EXPECT_FALSE(dz::verify_eps_approx(g, bad, 7.5));
  bad = sol;
  bad.leader = stackel::MixedStrategy{{1.0, 0.0}};
  bad.leaderPayoff = 10.0;
  EXPECT_FALSE(dz::verify_eps_approx(g, bad, 7.5));  // R is 1.0 below L
  EXPECT_FALSE(dz::verify_eps_approx(g, sol, 9.0));
}

}  // namespace
