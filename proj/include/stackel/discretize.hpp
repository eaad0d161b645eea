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

// Grid discretization of the leader simplex.
//
// Leader strategies are restricted to the eps-grid (entries integer multiples
// of eps = 1/k, kept as integer numerators). Against each grid point the
// follower may play any response within slack = 2 n eps M of its best value;
// among those the leader-optimal one is recorded, and the best recorded pair
// is returned.

#ifndef STACKEL_DISCRETIZE_HPP_
#define STACKEL_DISCRETIZE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "stackel/errors.hpp"
#include "stackel/game.hpp"

namespace stackel::discretize {

inline constexpr std::uint64_t kDefaultGridCap = 10'000'000;

// eps = 1/k exactly.
struct GridParams {
  std::uint64_t k = 1;

  double eps() const { return 1.0 / static_cast<double>(k); }

  void validate() const {
    if (k == 0) throw InputError("grid: 1/eps must be a positive integer");
  }

  // eps = p/q; requires p | q.
  static GridParams from_ratio(std::uint64_t p, std::uint64_t q) {
    if (p == 0 || q == 0 || q % p != 0) {
      throw InputError("grid: eps = p/q must have 1/eps a positive integer");
    }
    return GridParams{q / p};
  }

  static GridParams from_eps(double eps) {
    if (!(eps > 0.0) || eps > 1.0) throw InputError("grid: eps must lie in (0, 1]");
    const double inv = std::round(1.0 / eps);
    if (std::abs(inv * eps - 1.0) > 1e-12) throw InputError("grid: 1/eps must be an integer");
    return GridParams{static_cast<std::uint64_t>(inv)};
  }
};

// C(n+k-1, n-1), saturating at uint64 max.
inline std::uint64_t grid_size(std::size_t n, const GridParams& params) {
  if (n == 0) throw InputError("grid: n must be >= 1");
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t c = 1;
  const std::uint64_t r = n - 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    // C(k+i, i) = C(k+i-1, i-1) (k+i) / i; dividing out gcd(c, i) first
    // keeps every step exact.
    const std::uint64_t g = std::gcd(c, i);
    std::uint64_t next = 0;
    if (__builtin_mul_overflow(c / g, (params.k + i) / (i / g), &next)) return kMax;
    c = next;
  }
  return c;
}

inline void require_within_cap(std::size_t n, const GridParams& params, std::uint64_t cap) {
  params.validate();
  const std::uint64_t size = grid_size(n, params);
  if (size > cap) {
    throw LimitError("grid: " + std::to_string(size) + " points exceed the cap of " + std::to_string(cap));
  }
}

// Visits every composition of k into n parts in ascending lexicographic order.
inline void for_each_grid_point(std::size_t n, const GridParams& params,
                                const std::function<void(const std::vector<std::uint64_t>&)>& visit,
                                std::uint64_t cap = kDefaultGridCap) {
  require_within_cap(n, params, cap);
  std::vector<std::uint64_t> point(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t remaining) -> void {
    if (i + 1 == n) {
      point[i] = remaining;
      visit(point);
      return;
    }
    for (std::uint64_t v = 0; v <= remaining; ++v) {
      point[i] = v;
      self(self, i + 1, remaining - v);
    }
  };
  rec(rec, 0, params.k);
}

inline MixedStrategy to_strategy(const std::vector<std::uint64_t>& numerators, const GridParams& params) {
  MixedStrategy s;
  s.probs.reserve(numerators.size());
  for (std::uint64_t a : numerators) s.probs.push_back(static_cast<double>(a) / static_cast<double>(params.k));
  return s;
}

inline std::vector<MixedStrategy> grid_strategies(std::size_t n, const GridParams& params,
                                                  std::uint64_t cap = kDefaultGridCap) {
  std::vector<MixedStrategy> out;
  for_each_grid_point(
      n, params, [&](const std::vector<std::uint64_t>& p) { out.push_back(to_strategy(p, params)); }, cap);
  return out;
}

inline double max_abs_payoff(const BimatrixGame& game) {
  double m = 0.0;
  for (std::size_t i = 0; i < game.n; ++i) {
    for (std::size_t j = 0; j < game.m; ++j) {
      m = std::max({m, std::abs(game.uL[i][j]), std::abs(game.uF[i][j])});
    }
  }
  return m;
}

inline std::vector<std::size_t> almost_best_responses(const BimatrixGame& game, const MixedStrategy& x,
                                                      double slack) {
  if (!(slack >= 0.0)) throw InputError("almost_best_responses: slack must be >= 0");
  const std::vector<double> values = column_values(game.uF, x);
  const double best = *std::max_element(values.begin(), values.end());
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (values[j] >= best - slack - 1e-12) out.push_back(j);
  }
  return out;
}

struct ApproxSolution {
  GridParams params;
  std::vector<std::uint64_t> numerators;  // leader strategy times k
  MixedStrategy leader;
  std::size_t followerResponse = 0;
  double leaderPayoff = 0.0;
  double followerPayoff = 0.0;
  double slack = 0.0;  // 2 n eps M
  double M = 0.0;
  std::uint64_t gridSize = 0;
  std::uint64_t candidatesExamined = 0;  // (grid point, admissible response) pairs
};

inline ApproxSolution discretized_se(const BimatrixGame& game, const GridParams& params,
                                     std::uint64_t cap = kDefaultGridCap) {
  game.validate();
  ApproxSolution out;
  out.params = params;
  out.M = max_abs_payoff(game);
  out.slack = 2.0 * static_cast<double>(game.n) * params.eps() * out.M;
  out.gridSize = grid_size(game.n, params);
  bool have = false;
  for_each_grid_point(
      game.n, params,
      [&](const std::vector<std::uint64_t>& p) {
        const MixedStrategy x = to_strategy(p, params);
        const std::vector<double> ul = column_values(game.uL, x);
        std::size_t pick = game.m;
        for (std::size_t j : almost_best_responses(game, x, out.slack)) {
          ++out.candidatesExamined;
          if (pick == game.m || ul[j] > ul[pick]) pick = j;
        }
        if (!have || ul[pick] > out.leaderPayoff + 1e-12) {
          have = true;
          out.numerators = p;
          out.followerResponse = pick;
          out.leaderPayoff = ul[pick];
        }
      },
      cap);
  out.leader = to_strategy(out.numerators, params);
  const Payoffs pay = expected_utilities(game, out.leader, MixedStrategy::pure(game.m, out.followerResponse));
  out.leaderPayoff = pay.leader;
  out.followerPayoff = pay.follower;
  return out;
}

// Follower within slack of its best value against sol.leader, and leader
// payoff at least exact - slack. Values above exact are allowed since the
// follower's response is relaxed.
inline bool verify_eps_approx(const BimatrixGame& game, const ApproxSolution& sol, double exactLeaderPayoff) {
  if (sol.leader.size() != game.n || sol.followerResponse >= game.m) return false;
  const std::vector<double> uf = column_values(game.uF, sol.leader);
  const double best = *std::max_element(uf.begin(), uf.end());
  if (uf[sol.followerResponse] < best - sol.slack - 1e-9) return false;
  const double ul = column_values(game.uL, sol.leader)[sol.followerResponse];
  if (std::abs(ul - sol.leaderPayoff) > 1e-9) return false;
  return sol.leaderPayoff >= exactLeaderPayoff - sol.slack - 1e-9;
}

}  // namespace stackel::discretize

#endif  // STACKEL_DISCRETIZE_HPP_
