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

// Incentive games.
//
// The leader mixes over elements e of a ground set E (probabilities x_e) and
// may promise a nonnegative incentive V_S on follower sets S. The follower
// picks a set S from a family (explicit list, or all simple s-t paths of a
// multigraph whose edges are the elements):
//
//   U_L = sum_{e in S} x_e - V_S + sum_e x_e C_e
//   U_F = sum_{e in S} (c_e - x_e) + V_S
//
// The optimal commitment is found by maximizing W + sum_e x_e C_e subject to
// sum_{e in S}(c_e - x_e) <= -W for every S in the family, over x in the
// simplex, then placing the single incentive V = -W - base(S*) on the set
// S* maximizing sum_{e in S} c_e. The family constraints are generated
// lazily by a best-set oracle (exhaustive, or shortest path for paths).

#ifndef STACKEL_INCENTIVE_HPP_
#define STACKEL_INCENTIVE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "stackel/errors.hpp"
#include "stackel/game.hpp"
#include "stackel/lp.hpp"

namespace stackel::incentive {

// A family member, as sorted element indices. For paths this is the sorted
// edge (element) index sequence.
using SetKey = std::vector<std::size_t>;

struct Element {
  std::string id;
  double followerReward = 0.0;  // c_e
  double leaderReward = 0.0;    // C_e
};

struct ExplicitFamily {
  std::vector<SetKey> sets;
};

struct PathEdge {
  std::size_t element = 0;
  std::size_t u = 0;
  std::size_t v = 0;
};

// All simple source-sink paths of an undirected multigraph.
struct PathFamily {
  std::size_t numVertices = 0;
  std::vector<PathEdge> edges;
  std::size_t source = 0;
  std::size_t sink = 0;
};

using Family = std::variant<ExplicitFamily, PathFamily>;

struct IncentiveInstance {
  std::vector<Element> elements;
  Family family;

  std::size_t size() const { return elements.size(); }
  bool is_path() const { return std::holds_alternative<PathFamily>(family); }
  const ExplicitFamily& explicit_family() const { return std::get<ExplicitFamily>(family); }
  const PathFamily& path_family() const { return std::get<PathFamily>(family); }

  std::size_t index_of(const std::string& id) const {
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (elements[i].id == id) return i;
    }
    throw InputError("incentive instance: unknown element id '" + id + "'");
  }

  // Everything except "an s-t path exists".
  void validate_structure() const;
  void validate() const;
};

struct IncentiveLeaderStrategy {
  std::vector<double> x;
  std::map<SetKey, double> incentives;  // sparse V

  double incentive_on(const SetKey& s) const {
    auto it = incentives.find(s);
    return it == incentives.end() ? 0.0 : it->second;
  }

  void validate(const IncentiveInstance& inst) const {
    MixedStrategy{x}.validate(inst.size(), "incentive strategy x");
    for (const auto& [key, v] : incentives) {
      if (!std::isfinite(v) || v < 0.0) throw InputError("incentive strategy: V_S must be >= 0");
    }
    if (incentives.size() > inst.size() * inst.size()) {
      throw InputError("incentive strategy: more than |E|^2 incentivized sets");
    }
  }
};

namespace detail {

inline std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency(const PathFamily& pf) {
  // (edge position, other endpoint), sorted by element index
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(pf.numVertices);
  for (std::size_t k = 0; k < pf.edges.size(); ++k) {
    adj[pf.edges[k].u].emplace_back(k, pf.edges[k].v);
    adj[pf.edges[k].v].emplace_back(k, pf.edges[k].u);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end(), [&](const auto& a, const auto& b) {
      return pf.edges[a.first].element < pf.edges[b.first].element;
    });
  }
  return adj;
}

inline bool sink_reachable(const PathFamily& pf) {
  const auto adj = adjacency(pf);
  std::vector<char> seen(pf.numVertices, 0);
  std::vector<std::size_t> stack{pf.source};
  seen[pf.source] = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (v == pf.sink) return true;
    for (const auto& [k, w] : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return false;
}

}  // namespace detail

inline void IncentiveInstance::validate_structure() const {
  if (elements.empty()) throw InputError("incentive instance: no elements");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!std::isfinite(elements[i].followerReward) || !std::isfinite(elements[i].leaderReward)) {
      throw InputError("incentive instance: non-finite reward");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (elements[i].id == elements[j].id) throw InputError("incentive instance: duplicate element id");
    }
  }
  if (const auto* ef = std::get_if<ExplicitFamily>(&family)) {
    if (ef->sets.empty()) throw InputError("explicit family: no sets");
    for (const SetKey& s : ef->sets) {
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] >= elements.size()) throw InputError("explicit family: element index out of range");
        if (k > 0 && s[k - 1] >= s[k]) throw InputError("explicit family: set not sorted/unique");
      }
    }
    return;
  }
  const PathFamily& pf = path_family();
  if (pf.source >= pf.numVertices || pf.sink >= pf.numVertices) {
    throw InputError("path family: source/sink out of range");
  }
  if (pf.source == pf.sink) throw InputError("path family: source == sink");
  std::vector<char> used(elements.size(), 0);
  for (const PathEdge& e : pf.edges) {
    if (e.element >= elements.size()) throw InputError("path family: edge references unknown element");
    if (used[e.element]) throw InputError("path family: element used by two edges");
    used[e.element] = 1;
    if (e.u >= pf.numVertices || e.v >= pf.numVertices) throw InputError("path family: endpoint out of range");
    if (e.u == e.v) throw InputError("path family: self-loop");
  }
  for (const Element& el : elements) {
    if (el.followerReward > 0.0) {
      throw InputError("path family: follower rewards c_e must be <= 0 (nonnegative edge costs)");
    }
  }
}

inline void IncentiveInstance::validate() const {
  validate_structure();
  if (is_path() && !detail::sink_reachable(path_family())) {
    throw InputError("path family: no s-t path");
  }
}

// sum_{e in S} (c_e - x_e)
inline double base_value(const IncentiveInstance& inst, std::span<const double> x, const SetKey& s) {
  double v = 0.0;
  for (std::size_t e : s) v += inst.elements[e].followerReward - x[e];
  return v;
}

inline bool is_st_path(const IncentiveInstance& inst, const SetKey& s) {
  const PathFamily& pf = inst.path_family();
  if (s.empty()) return false;
  std::vector<std::size_t> edgeOf(inst.size(), pf.edges.size());
  for (std::size_t k = 0; k < pf.edges.size(); ++k) edgeOf[pf.edges[k].element] = k;
  std::vector<std::vector<std::size_t>> incident(pf.numVertices);
  for (std::size_t e : s) {
    if (e >= inst.size() || edgeOf[e] == pf.edges.size()) return false;
    const PathEdge& pe = pf.edges[edgeOf[e]];
    incident[pe.u].push_back(edgeOf[e]);
    incident[pe.v].push_back(edgeOf[e]);
  }
  for (std::size_t v = 0; v < pf.numVertices; ++v) {
    const std::size_t want = (v == pf.source || v == pf.sink) ? 1 : (incident[v].empty() ? 0 : 2);
    if (incident[v].size() != want) return false;
  }
  std::size_t v = pf.source;
  std::size_t prev = pf.edges.size();
  std::size_t steps = 0;
  while (v != pf.sink) {
    std::size_t next = pf.edges.size();
    for (std::size_t k : incident[v]) {
      if (k != prev) next = k;
    }
    if (next == pf.edges.size()) return false;
    const PathEdge& pe = pf.edges[next];
    v = pe.u == v ? pe.v : pe.u;
    prev = next;
    ++steps;
  }
  return steps == s.size();
}

inline bool in_family(const IncentiveInstance& inst, const SetKey& s) {
  if (inst.is_path()) return is_st_path(inst, s);
  const auto& sets = inst.explicit_family().sets;
  return std::find(sets.begin(), sets.end(), s) != sets.end();
}

inline void require_in_family(const IncentiveInstance& inst, const SetKey& s) {
  if (!in_family(inst, s)) throw InputError("incentive: set is not a member of the family");
}

inline double leader_payoff(const IncentiveInstance& inst, const IncentiveLeaderStrategy& strat,
                            const SetKey& s) {
  require_in_family(inst, s);
  double v = -strat.incentive_on(s);
  for (std::size_t e : s) v += strat.x[e];
  for (std::size_t e = 0; e < inst.size(); ++e) v += strat.x[e] * inst.elements[e].leaderReward;
  return v;
}

inline double follower_payoff(const IncentiveInstance& inst, const IncentiveLeaderStrategy& strat,
                              const SetKey& s) {
  require_in_family(inst, s);
  return base_value(inst, strat.x, s) + strat.incentive_on(s);
}

struct BestSet {
  SetKey set;
  double value = 0.0;  // sum_{e in S} (c_e - x_e)
};

namespace detail {

// Among minimum-weight s-t paths under w_e = x_e - c_e >= 0: fewest edges,
// then the lexicographically smallest element-index sequence from s to t.
inline SetKey shortest_path(const IncentiveInstance& inst, std::span<const double> x) {
  const PathFamily& pf = inst.path_family();
  const auto adj = adjacency(pf);
  auto weight = [&](std::size_t k) {
    const std::size_t e = pf.edges[k].element;
    return std::max(x[e], 0.0) - inst.elements[e].followerReward;
  };
  using Key = std::pair<double, std::size_t>;  // (distance to sink, hops)
  const Key inf{std::numeric_limits<double>::infinity(), 0};
  std::vector<Key> dist(pf.numVertices, inf);
  std::vector<char> done(pf.numVertices, 0);
  using Item = std::tuple<double, std::size_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[pf.sink] = {0.0, 0};
  heap.emplace(0.0, 0, pf.sink);
  while (!heap.empty()) {
    const auto [d, h, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    done[v] = 1;
    for (const auto& [k, w] : adj[v]) {
      const Key cand{d + weight(k), h + 1};
      if (!done[w] && cand < dist[w]) {
        dist[w] = cand;
        heap.emplace(cand.first, cand.second, w);
      }
    }
  }
  if (!done[pf.source]) throw InputError("path family: no s-t path");
  SetKey path;
  std::size_t v = pf.source;
  while (v != pf.sink) {
    const double slack = 1e-12 * (1.0 + std::abs(dist[v].first));
    std::size_t chosen = pf.edges.size();
    std::size_t to = 0;
    for (const auto& [k, w] : adj[v]) {
      if (!done[w] || dist[w].second + 1 != dist[v].second) continue;
      if (std::abs(weight(k) + dist[w].first - dist[v].first) > slack) continue;
      chosen = k;
      to = w;
      break;  // adjacency is sorted by element index
    }
    if (chosen == pf.edges.size()) {
      throw SolverError("shortest_path: no tight edge out of a reached vertex");
    }
    path.push_back(pf.edges[chosen].element);
    v = to;
  }
  std::sort(path.begin(), path.end());
  return path;
}

}  // namespace detail

// argmax over the family of sum_{e in S}(c_e - x_e). Explicit families break
// ties by lowest set index; path families use the shortest-path order above.
inline BestSet base_best_set(const IncentiveInstance& inst, std::span<const double> x) {
  if (x.size() != inst.size()) throw InputError("base_best_set: x has wrong length");
  if (inst.is_path()) {
    SetKey p = detail::shortest_path(inst, x);
    const double v = base_value(inst, x, p);
    return {std::move(p), v};
  }
  const auto& sets = inst.explicit_family().sets;
  std::size_t pick = 0;
  double best = base_value(inst, x, sets[0]);
  for (std::size_t i = 1; i < sets.size(); ++i) {
    const double v = base_value(inst, x, sets[i]);
    if (v > best) {
      best = v;
      pick = i;
    }
  }
  return {sets[pick], best};
}

// LP variable layout shared by the solver and its tests: x_0..x_{n-1}, W.
inline std::vector<double> family_cut_coeffs(const IncentiveInstance& inst, const SetKey& s) {
  std::vector<double> row(inst.size() + 1, 0.0);
  for (std::size_t e : s) row[e] = -1.0;
  row[inst.size()] = 1.0;
  return row;
}

// W - sum_{e in S} x_e <= -sum_{e in S} c_e
inline double family_cut_rhs(const IncentiveInstance& inst, const SetKey& s) {
  double r = 0.0;
  for (std::size_t e : s) r -= inst.elements[e].followerReward;
  return r;
}

// Given a candidate (x, W), returns the family constraint violated the most
// when it is violated by more than `tol`.
inline lp::SeparationOracle separation_oracle_for(const IncentiveInstance& inst, double tol = 1e-9) {
  inst.validate();
  return [&inst, tol](std::span<const double> cand) -> std::optional<lp::Cut> {
    if (cand.size() != inst.size() + 1) throw InputError("incentive oracle: candidate has wrong length");
    const double w = cand[inst.size()];
    const BestSet best = base_best_set(inst, cand.first(inst.size()));
    const double violation = best.value + w;
    if (!(violation > tol)) return std::nullopt;
    return lp::Cut{family_cut_coeffs(inst, best.set), family_cut_rhs(inst, best.set), violation};
  };
}

// max W + sum x_e C_e over the simplex, with no family rows yet.
inline lp::LinearProgram incentive_base_lp(const IncentiveInstance& inst) {
  const std::size_t n = inst.size();
  lp::LinearProgram prog(n + 1);
  for (std::size_t e = 0; e < n; ++e) prog.objective[e] = inst.elements[e].leaderReward;
  prog.objective[n] = 1.0;
  prog.lowerBounds[n] = std::nullopt;
  std::vector<double> simplex(n + 1, 1.0);
  simplex[n] = 0.0;
  prog.add_eq(std::move(simplex), 1.0);
  return prog;
}

// The same LP with every explicit family constraint written out.
inline lp::LinearProgram materialized_incentive_lp(const IncentiveInstance& inst) {
  inst.validate();
  lp::LinearProgram prog = incentive_base_lp(inst);
  for (const SetKey& s : inst.explicit_family().sets) {
    prog.add_leq(family_cut_coeffs(inst, s), family_cut_rhs(inst, s));
  }
  return prog;
}

struct IncentiveSolution {
  IncentiveLeaderStrategy strategy;
  double W = 0.0;            // -max_S base(S) at x*
  double lpObjective = 0.0;  // LP optimum W* + sum x*_e C_e
  SetKey targetSet;          // S*
  double incentive = 0.0;    // V*_{S*}
  double leaderPayoff = 0.0;
  double followerPayoff = 0.0;
  // V* exceeded 1, the incentive box of the game definition. Reported only.
  bool incentiveBoxExceeded = false;
  std::size_t lpRounds = 0;
};

struct SolveOptions {
  double tol = 1e-7;
  std::size_t maxRounds = 0;  // 0: 10 * (numVars + family size bound)
};

inline IncentiveSolution solve_stackelberg_incentive(const IncentiveInstance& inst,
                                                     const SolveOptions& opts = {}) {
  inst.validate();
  const std::size_t n = inst.size();

  // S* maximizes sum c_e, i.e. the best set against x = 0.
  const std::vector<double> zeros(n, 0.0);
  const SetKey target = base_best_set(inst, zeros).set;

  // Seeding with S*'s row bounds W from above.
  lp::LinearProgram prog = incentive_base_lp(inst);
  prog.add_leq(family_cut_coeffs(inst, target), family_cut_rhs(inst, target));

  std::size_t rounds = opts.maxRounds;
  if (rounds == 0) {
    const std::size_t bound = inst.is_path() ? inst.path_family().edges.size() * inst.path_family().edges.size()
                                             : inst.explicit_family().sets.size();
    rounds = lp::default_max_rounds(n + 1, bound);
  }
  const lp::LpSolution sol =
      lp::solve_with_generation(std::move(prog), separation_oracle_for(inst), opts.tol, rounds);
  if (!sol.optimal()) {
    throw SolverError(std::string("solve_stackelberg_incentive: LP ended ") + lp::to_string(sol.status));
  }

  IncentiveSolution out;
  out.lpRounds = sol.rounds;
  out.lpObjective = sol.objectiveValue;
  out.strategy.x = stackel::detail::clean_distribution(
                       std::vector<double>(sol.values.begin(), sol.values.begin() + static_cast<std::ptrdiff_t>(n)))
                       .probs;
  // The tightest W the cleaned x* supports against the whole family; within
  // tol of the LP value and makes S* tie exactly with the best base set.
  const BestSet best = base_best_set(inst, out.strategy.x);
  out.W = -best.value;
  out.targetSet = target;
  double v = -out.W - base_value(inst, out.strategy.x, target);
  if (v < 1e-12) v = 0.0;
  out.incentive = v;
  if (v > 0.0) out.strategy.incentives[target] = v;
  out.incentiveBoxExceeded = v > 1.0 + 1e-12;
  out.leaderPayoff = leader_payoff(inst, out.strategy, target);
  out.followerPayoff = follower_payoff(inst, out.strategy, target);
  return out;
}

// Follower best set under incentives: the incentivized sets plus the base
// best set compete; payoff ties (1e-9) go to the leader's preference, then to
// the lowest set index (explicit) or smallest key (paths).
inline SetKey follower_best_set(const IncentiveInstance& inst, const IncentiveLeaderStrategy& strat) {
  inst.validate();
  strat.validate(inst);
  for (const auto& [key, v] : strat.incentives) require_in_family(inst, key);

  std::vector<SetKey> candidates;
  if (inst.is_path()) {
    for (const auto& [key, v] : strat.incentives) candidates.push_back(key);
    candidates.push_back(base_best_set(inst, strat.x).set);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  } else {
    candidates = inst.explicit_family().sets;
  }
  std::vector<double> uf(candidates.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    uf[i] = base_value(inst, strat.x, candidates[i]) + strat.incentive_on(candidates[i]);
    best = std::max(best, uf[i]);
  }
  std::size_t pick = candidates.size();
  double pickLeader = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (uf[i] < best - kTieTolerance) continue;
    const double ul = leader_payoff(inst, strat, candidates[i]);
    if (pick == candidates.size() || ul > pickLeader + kTieTolerance) {
      pick = i;
      pickLeader = ul;
    }
  }
  return candidates[pick];
}

// The incentive on the follower's chosen set is at least what is needed to
// lift it to the best base value (nonnegative incentives elsewhere).
inline bool check_incentive_lower_bound(const IncentiveInstance& inst, const IncentiveLeaderStrategy& strat) {
  const SetKey chosen = follower_best_set(inst, strat);
  const double wPrime = -base_best_set(inst, strat.x).value;
  return strat.incentive_on(chosen) >= -wPrime - base_value(inst, strat.x, chosen) - 1e-7;
}

// All simple s-t paths, depth-first from the source with incident edges taken
// in element-index order. Throws LimitError past `limit` paths; returns an
// empty family when the sink is unreachable.
inline ExplicitFamily enumerate_family(const IncentiveInstance& inst, std::size_t limit) {
  if (!inst.is_path()) throw InputError("enumerate_family: instance is not a path family");
  inst.validate_structure();
  const PathFamily& pf = inst.path_family();
  const auto adj = detail::adjacency(pf);
  ExplicitFamily out;
  std::vector<char> onPath(pf.numVertices, 0);
  SetKey current;
  auto dfs = [&](auto&& self, std::size_t v) -> void {
    if (v == pf.sink) {
      if (out.sets.size() >= limit) {
        throw LimitError("enumerate_family: more than " + std::to_string(limit) + " paths");
      }
      SetKey s = current;
      std::sort(s.begin(), s.end());
      out.sets.push_back(std::move(s));
      return;
    }
    onPath[v] = 1;
    for (const auto& [k, w] : adj[v]) {
      if (onPath[w]) continue;
      current.push_back(pf.edges[k].element);
      self(self, w);
      current.pop_back();
    }
    onPath[v] = 0;
  };
  dfs(dfs, pf.source);
  return out;
}

inline IncentiveInstance materialize(const IncentiveInstance& inst, std::size_t limit) {
  if (!inst.is_path()) return inst;
  IncentiveInstance out{inst.elements, enumerate_family(inst, limit)};
  out.validate();
  return out;
}

// The no-incentive game as a bimatrix: rows are elements, columns the
// family members; uL(e,S) = 1[e in S] + C_e, uF(e,S) = -1[e in S] + sum_S c.
inline BimatrixGame to_bimatrix(const IncentiveInstance& inst) {
  inst.validate();
  const auto& sets = inst.explicit_family().sets;
  Matrix ul(inst.size(), std::vector<double>(sets.size()));
  Matrix uf(inst.size(), std::vector<double>(sets.size()));
  for (std::size_t j = 0; j < sets.size(); ++j) {
    double cs = 0.0;
    for (std::size_t e : sets[j]) cs += inst.elements[e].followerReward;
    for (std::size_t e = 0; e < inst.size(); ++e) {
      const double hit = std::binary_search(sets[j].begin(), sets[j].end(), e) ? 1.0 : 0.0;
      ul[e][j] = hit + inst.elements[e].leaderReward;
      uf[e][j] = -hit + cs;
    }
  }
  return BimatrixGame(std::move(ul), std::move(uf));
}

}  // namespace stackel::incentive

#endif  // STACKEL_INCENTIVE_HPP_
