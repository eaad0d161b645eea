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

// Explicit two-player general-sum (bimatrix) games and the exact solvers
// everything else is checked against: Stackelberg by one LP per follower
// action, maximin, and Nash by support enumeration.

#ifndef STACKEL_GAME_HPP_
#define STACKEL_GAME_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "stackel/errors.hpp"
#include "stackel/lp.hpp"

namespace stackel {

// Two payoffs are "equal" for best-response purposes when within this.
inline constexpr double kTieTolerance = 1e-9;

using Matrix = std::vector<std::vector<double>>;

struct MixedStrategy {
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }
  double operator[](std::size_t i) const { return probs[i]; }

  static MixedStrategy pure(std::size_t n, std::size_t index) {
    MixedStrategy s{std::vector<double>(n, 0.0)};
    s.probs.at(index) = 1.0;
    return s;
  }
  static MixedStrategy uniform(std::size_t n) {
    return MixedStrategy{std::vector<double>(n, 1.0 / static_cast<double>(n))};
  }

  // Throws InputError unless this is a distribution over `n` actions.
  void validate(std::size_t n, const char* who = "mixed strategy") const {
    if (probs.size() != n) {
      throw InputError(std::string(who) + ": expected " + std::to_string(n) +
                       " entries, got " + std::to_string(probs.size()));
    }
    double total = 0.0;
    for (double p : probs) {
      if (!std::isfinite(p) || p < -1e-12) {
        throw InputError(std::string(who) + ": negative or non-finite entry");
      }
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw InputError(std::string(who) + ": entries do not sum to 1");
    }
  }
};

struct BimatrixGame {
  std::size_t n = 0;  // leader pure strategies (rows)
  std::size_t m = 0;  // follower pure strategies (columns)
  Matrix uL;
  Matrix uF;

  BimatrixGame() = default;
  BimatrixGame(Matrix leader, Matrix follower)
      : n(leader.size()),
        m(leader.empty() ? 0 : leader.front().size()),
        uL(std::move(leader)),
        uF(std::move(follower)) {
    validate();
  }

  void validate() const {
    if (n < 1 || m < 1) throw InputError("bimatrix game: need n >= 1 and m >= 1");
    auto check = [&](const Matrix& u, const char* name) {
      if (u.size() != n) throw InputError(std::string(name) + ": wrong row count");
      for (const auto& row : u) {
        if (row.size() != m) throw InputError(std::string(name) + ": ragged matrix");
        for (double v : row) {
          if (!std::isfinite(v)) throw InputError(std::string(name) + ": non-finite entry");
        }
      }
    };
    check(uL, "uL");
    check(uF, "uF");
  }
};

struct Payoffs {
  double leader = 0.0;
  double follower = 0.0;
};

inline Payoffs expected_utilities(const BimatrixGame& game, const MixedStrategy& x,
                                  const MixedStrategy& y) {
  if (x.size() != game.n || y.size() != game.m) {
    throw InputError("expected_utilities: strategy dimension mismatch");
  }
  Payoffs p;
  for (std::size_t i = 0; i < game.n; ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < game.m; ++j) {
      const double w = x[i] * y[j];
      p.leader += w * game.uL[i][j];
      p.follower += w * game.uF[i][j];
    }
  }
  return p;
}

// Per-column expected payoffs against a leader mixed strategy.
inline std::vector<double> column_values(const Matrix& u, const MixedStrategy& x) {
  std::vector<double> out(u.empty() ? 0 : u.front().size(), 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += x[i] * u[i][j];
  }
  return out;
}

// Follower best response with ties (within kTieTolerance) broken in the
// leader's favour, then by lowest index.
inline std::size_t follower_best_response(const BimatrixGame& game,
                                          const MixedStrategy& x) {
  if (x.size() != game.n) throw InputError("follower_best_response: dimension mismatch");
  const auto fv = column_values(game.uF, x);
  const auto lv = column_values(game.uL, x);
  const double best = *std::max_element(fv.begin(), fv.end());
  std::size_t pick = game.m;
  for (std::size_t j = 0; j < game.m; ++j) {
    if (fv[j] < best - kTieTolerance) continue;
    if (pick == game.m || lv[j] > lv[pick] + kTieTolerance) pick = j;
  }
  return pick;
}

struct StackelbergSolution {
  MixedStrategy leader;
  std::size_t followerResponse = 0;
  double leaderPayoff = 0.0;
  double followerPayoff = 0.0;
};

namespace detail {

inline MixedStrategy clean_distribution(std::vector<double> p) {
  double total = 0.0;
  for (double& v : p) {
    v = std::max(v, 0.0);
    total += v;
  }
  if (total > 0.0) {
    for (double& v : p) v /= total;
  }
  return MixedStrategy{std::move(p)};
}

}  // namespace detail

// Multiple LPs: for each follower action j, the best leader strategy that
// keeps j a (weak) best response; the overall winner is the SE.
inline StackelbergSolution solve_stackelberg(const BimatrixGame& game) {
  game.validate();
  bool found = false;
  StackelbergSolution best;
  // Columns are tried in decreasing order of their best leader entry so the
  // bound prunes early; equal values still resolve to the lowest column.
  std::vector<double> bound(game.m, -std::numeric_limits<double>::infinity());
  std::vector<std::size_t> order(game.m);
  for (std::size_t j = 0; j < game.m; ++j) {
    order[j] = j;
    for (std::size_t i = 0; i < game.n; ++i) bound[j] = std::max(bound[j], game.uL[i][j]);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return bound[a] > bound[b]; });
  for (std::size_t j : order) {
    if (found && bound[j] < best.leaderPayoff - 1e-12) break;

    lp::LinearProgram prog(game.n);
    for (std::size_t i = 0; i < game.n; ++i) prog.objective[i] = game.uL[i][j];
    prog.add_eq(std::vector<double>(game.n, 1.0), 1.0);
    for (std::size_t k = 0; k < game.m; ++k) {
      if (k == j) continue;
      std::vector<double> row(game.n);
      for (std::size_t i = 0; i < game.n; ++i) row[i] = game.uF[i][k] - game.uF[i][j];
      prog.add_leq(std::move(row), 0.0);
    }
    const lp::LpSolution sol = lp::solve(prog);
    if (sol.status == lp::LpStatus::kInfeasible) continue;
    if (!sol.optimal()) {
      throw SolverError(std::string("solve_stackelberg: column LP returned ") +
                        lp::to_string(sol.status));
    }
    const bool better = sol.objectiveValue > best.leaderPayoff + 1e-12;
    const bool tie = sol.objectiveValue >= best.leaderPayoff - 1e-12 && j < best.followerResponse;
    if (!found || better || tie) {
      found = true;
      best.leader = detail::clean_distribution(sol.values);
      best.followerResponse = j;
      best.leaderPayoff = sol.objectiveValue;
    }
  }
  if (!found) throw SolverError("solve_stackelberg: every column LP infeasible");
  const Payoffs p = expected_utilities(game, best.leader,
                                       MixedStrategy::pure(game.m, best.followerResponse));
  best.leaderPayoff = p.leader;
  best.followerPayoff = p.follower;
  return best;
}

enum class Player { kLeader, kFollower };

struct MaximinResult {
  MixedStrategy strategy;
  double value = 0.0;  // guaranteed own payoff
};

inline MaximinResult solve_maximin(const BimatrixGame& game, Player player) {
  game.validate();
  const bool leader = player == Player::kLeader;
  const std::size_t own = leader ? game.n : game.m;
  const std::size_t opp = leader ? game.m : game.n;
  auto payoff = [&](std::size_t mine, std::size_t theirs) {
    return leader ? game.uL[mine][theirs] : game.uF[theirs][mine];
  };
  // Variables: own mixed strategy, then the guaranteed value v (free).
  lp::LinearProgram prog(own + 1);
  prog.objective[own] = 1.0;
  prog.lowerBounds[own] = std::nullopt;
  std::vector<double> simplex(own + 1, 1.0);
  simplex[own] = 0.0;
  prog.add_eq(std::move(simplex), 1.0);
  for (std::size_t t = 0; t < opp; ++t) {
    std::vector<double> row(own + 1);
    for (std::size_t s = 0; s < own; ++s) row[s] = -payoff(s, t);
    row[own] = 1.0;
    prog.add_leq(std::move(row), 0.0);
  }
  const lp::LpSolution sol = lp::solve(prog);
  if (!sol.optimal()) {
    throw SolverError(std::string("solve_maximin: LP returned ") + lp::to_string(sol.status));
  }
  MaximinResult out;
  out.strategy = detail::clean_distribution(
      std::vector<double>(sol.values.begin(), sol.values.begin() + static_cast<std::ptrdiff_t>(own)));
  out.value = sol.values[own];
  return out;
}

struct StrategyProfile {
  MixedStrategy leader;
  MixedStrategy follower;
  double leaderPayoff = 0.0;
  double followerPayoff = 0.0;
};

// Both players play their own maximin strategy; returns the realized payoffs.
inline StrategyProfile realized_maximin_profile(const BimatrixGame& game) {
  StrategyProfile out;
  out.leader = solve_maximin(game, Player::kLeader).strategy;
  out.follower = solve_maximin(game, Player::kFollower).strategy;
  const Payoffs p = expected_utilities(game, out.leader, out.follower);
  out.leaderPayoff = p.leader;
  out.followerPayoff = p.follower;
  return out;
}

inline constexpr std::size_t kNashEnumerationLimit = 8;

namespace detail {

// Solves A z = b in place by Gaussian elimination with partial pivoting.
// Returns false when A is (numerically) singular.
inline bool solve_dense(std::vector<std::vector<double>> a, std::vector<double> b,
                        std::vector<double>& z) {
  const std::size_t k = b.size();
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (std::abs(a[piv][c]) < 1e-12) return false;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c || a[r][c] == 0.0) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t cc = c; cc < k; ++cc) a[r][cc] -= f * a[c][cc];
      b[r] -= f * b[c];
    }
  }
  z.resize(k);
  for (std::size_t r = 0; r < k; ++r) z[r] = b[r] / a[r][r];
  return true;
}

// Mixed strategy over `support` (indices into `own` actions) making the
// opponent indifferent across `oppSupport`. `pay(o, s)` is the opponent's
// payoff when it plays o and we play s.
template <class Pay>
bool indifference_strategy(const std::vector<std::size_t>& support,
                           const std::vector<std::size_t>& oppSupport,
                           std::size_t own, Pay pay, std::vector<double>& out) {
  const std::size_t k = support.size();
  std::vector<std::vector<double>> a(k + 1, std::vector<double>(k + 1, 0.0));
  std::vector<double> b(k + 1, 0.0);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) a[r][c] = pay(oppSupport[r], support[c]);
    a[r][k] = -1.0;
  }
  for (std::size_t c = 0; c < k; ++c) a[k][c] = 1.0;
  b[k] = 1.0;
  std::vector<double> z;
  if (!solve_dense(std::move(a), std::move(b), z)) return false;
  out.assign(own, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    if (z[c] < -1e-12) return false;
    out[support[c]] = std::max(z[c], 0.0);
  }
  return true;
}

inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) return;
    ++idx[pos - 1];
    for (std::size_t q = pos; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
}

}  // namespace detail

struct NashEquilibrium {
  MixedStrategy leader;
  MixedStrategy follower;
};

// All equilibria with equal-size supports; complete for nondegenerate games.
inline std::vector<NashEquilibrium> solve_nash_support_enumeration(const BimatrixGame& game) {
  game.validate();
  if (game.n > kNashEnumerationLimit || game.m > kNashEnumerationLimit) {
    throw LimitError("solve_nash_support_enumeration: n and m must be <= 8");
  }
  std::vector<NashEquilibrium> found;
  auto same = [](const MixedStrategy& a, const MixedStrategy& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::abs(a[i] - b[i]) > 1e-9) return false;
    }
    return true;
  };
  for (std::size_t k = 1; k <= std::min(game.n, game.m); ++k) {
    detail::for_each_subset(game.n, k, [&](const std::vector<std::size_t>& rows) {
      detail::for_each_subset(game.m, k, [&](const std::vector<std::size_t>& cols) {
        std::vector<double> x;
        std::vector<double> y;
        // x makes the follower indifferent over cols; y the leader over rows.
        if (!detail::indifference_strategy(
                rows, cols, game.n,
                [&](std::size_t j, std::size_t i) { return game.uF[i][j]; }, x)) {
          return;
        }
        if (!detail::indifference_strategy(
                cols, rows, game.m,
                [&](std::size_t i, std::size_t j) { return game.uL[i][j]; }, y)) {
          return;
        }
        NashEquilibrium eq{detail::clean_distribution(x), detail::clean_distribution(y)};
        const auto rowVals = column_values(game.uF, eq.leader);
        const double fBest = *std::max_element(rowVals.begin(), rowVals.end());
        for (std::size_t j : cols) {
          if (rowVals[j] < fBest - kTieTolerance) return;
        }
        for (std::size_t i = 0; i < game.n; ++i) {
          double li = 0.0;
          for (std::size_t j = 0; j < game.m; ++j) li += eq.follower[j] * game.uL[i][j];
          double lSupport = 0.0;
          for (std::size_t j = 0; j < game.m; ++j) lSupport += eq.follower[j] * game.uL[rows[0]][j];
          if (li > lSupport + kTieTolerance) return;
        }
        for (const auto& prev : found) {
          if (same(prev.leader, eq.leader) && same(prev.follower, eq.follower)) return;
        }
        found.push_back(std::move(eq));
      });
    });
  }
  return found;
}

}  // namespace stackel

#endif  // STACKEL_GAME_HPP_
