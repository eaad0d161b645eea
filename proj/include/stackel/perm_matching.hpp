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

// The permuted matching game. Both players pick matchings of a multigraph G
// with an edge permutation pi; the leader scores |M_L ∩ pi(M_F)| and the
// follower |M_L ∩ M_F|.
//
// Besides utilities and best responses this has the greedy pair algorithm
// behind the two-point approximate leader strategy, the pi-TIM objective
// (find M maximizing |M ∩ pi(M)|) and brute-force references for all of it.

#ifndef STACKEL_PERM_MATCHING_HPP_
#define STACKEL_PERM_MATCHING_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stackel/errors.hpp"
#include "stackel/game.hpp"
#include "stackel/matching.hpp"

namespace stackel::pm {

struct EdgePermutation {
  std::vector<EdgeId> image;  // image[e] = pi(e)

  static EdgePermutation identity(std::size_t n) {
    EdgePermutation p;
    p.image.resize(n);
    std::iota(p.image.begin(), p.image.end(), EdgeId{0});
    return p;
  }

  EdgeId operator()(EdgeId e) const { return image[e]; }

  Matching apply(const Matching& m) const {
    std::vector<EdgeId> out;
    out.reserve(m.size());
    for (EdgeId e : m.edges) out.push_back(image[e]);
    return Matching(std::move(out));
  }

  EdgePermutation inverse() const {
    EdgePermutation inv;
    inv.image.resize(image.size());
    for (EdgeId e = 0; e < image.size(); ++e) inv.image[image[e]] = e;
    return inv;
  }

  void validate(std::size_t numEdges) const {
    if (image.size() != numEdges) throw InputError("permutation: length != edge count");
    std::vector<char> seen(numEdges, 0);
    for (EdgeId e : image) {
      if (e >= numEdges || seen[e]) throw InputError("permutation: not a bijection on edge ids");
      seen[e] = 1;
    }
  }
};

struct PermMatchInstance {
  Multigraph graph;
  EdgePermutation pi;

  std::size_t num_edges() const { return graph.num_edges(); }

  void validate() const {
    graph.validate();
    pi.validate(graph.num_edges());
  }
};

struct WeightedMatching {
  Matching matching;
  double probability = 0.0;
};

// Finite-support mixed strategy over matchings.
struct MatchingMix {
  std::vector<WeightedMatching> support;

  static MatchingMix point(Matching m) { return MatchingMix{{{std::move(m), 1.0}}}; }

  void validate(const Multigraph& g, double tol = 1e-9) const {
    double total = 0.0;
    for (const auto& [m, p] : support) {
      if (!std::isfinite(p) || p < 0.0) throw InputError("matching mix: negative probability");
      require_matching(g, m, "matching mix");
      total += p;
    }
    if (std::abs(total - 1.0) > tol) throw InputError("matching mix: probabilities must sum to 1");
  }
};

// The leader strategy produced by approx_leader_strategy: two matchings.
using TwoPointLeaderStrategy = MatchingMix;

struct PmPayoffs {
  std::size_t leader = 0;
  std::size_t follower = 0;
};

inline PmPayoffs pm_utilities(const PermMatchInstance& inst, const Matching& leader,
                              const Matching& follower) {
  require_matching(inst.graph, leader, "pm_utilities leader");
  require_matching(inst.graph, follower, "pm_utilities follower");
  return {common(leader, inst.pi.apply(follower)), common(leader, follower)};
}

// Expected payoffs of a leader mix against a pure follower matching.
inline std::pair<double, double> pm_expected(const PermMatchInstance& inst, const MatchingMix& leader,
                                             const Matching& follower) {
  const Matching image = inst.pi.apply(follower);
  double ul = 0.0;
  double uf = 0.0;
  for (const auto& [m, p] : leader.support) {
    ul += p * static_cast<double>(common(m, image));
    uf += p * static_cast<double>(common(m, follower));
  }
  return {ul, uf};
}

// Pr[e in M] for each edge e.
inline std::vector<double> edge_marginals(std::size_t numEdges, const MatchingMix& mix) {
  std::vector<double> w(numEdges, 0.0);
  for (const auto& [m, p] : mix.support) {
    for (EdgeId e : m.edges) w[e] += p;
  }
  return w;
}

inline constexpr std::size_t kLeaderFavoringEdgeLimit = 12;
inline constexpr std::size_t kBruteForceEdgeLimit = 12;

struct PmBestResponse {
  Matching matching;
  // False when the graph is too large for the leader-favoring tie-break and
  // an arbitrary (deterministic) maximum-weight matching was returned.
  bool leaderFavoring = true;
};

// Follower best response: a maximum-weight matching under w_e = Pr[e in M_L].
// Up to 12 edges, every matching within 1e-9 of the optimum is considered and
// the one best for the leader is returned (first in size/lex order on ties).
inline PmBestResponse follower_best_response_pm(const PermMatchInstance& inst,
                                                const MatchingMix& leader) {
  inst.validate();
  leader.validate(inst.graph);
  const auto w = edge_marginals(inst.num_edges(), leader);
  if (inst.num_edges() > kLeaderFavoringEdgeLimit) {
    return {max_weight_matching(inst.graph, w), false};
  }
  const auto all = enumerate_matchings(inst.graph, std::size_t{1} << kLeaderFavoringEdgeLimit);
  double bestW = 0.0;
  for (const auto& m : all) bestW = std::max(bestW, matching_weight(m, w));
  const Matching* pick = nullptr;
  double pickLeader = 0.0;
  for (const auto& m : all) {
    if (matching_weight(m, w) < bestW - kTieTolerance) continue;
    const double ul = pm_expected(inst, leader, m).first;
    if (pick == nullptr || ul > pickLeader + kTieTolerance) {
      pick = &m;
      pickLeader = ul;
    }
  }
  return {*pick, true};
}

// Leader best response to a follower mix: weights w_e = Pr[pi^-1(e) in M_F].
inline Matching leader_best_response_pm(const PermMatchInstance& inst, const MatchingMix& follower) {
  inst.validate();
  follower.validate(inst.graph);
  std::vector<double> w(inst.num_edges(), 0.0);
  for (const auto& [m, p] : follower.support) {
    for (EdgeId e : m.edges) w[inst.pi(e)] += p;
  }
  return max_weight_matching(inst.graph, w);
}

struct GreedyPair {
  Matching x;
  Matching xPrime;

  std::size_t shared(const EdgePermutation& pi) const { return common(x, pi.apply(xPrime)); }
};

inline std::vector<EdgeId> canonical_edge_order(const PermMatchInstance& inst) {
  std::vector<EdgeId> order(inst.num_edges());
  std::iota(order.begin(), order.end(), EdgeId{0});
  return order;
}

// Greedily builds x, x' with pi(x') = x: scanning e' in `edgeOrder`, the pair
// (pi(e'), e') is taken when pi(e') is disjoint from x and e' from x'. One
// pass is maximal because x and x' only grow.
inline GreedyPair greedy_pair(const PermMatchInstance& inst, std::span<const EdgeId> edgeOrder) {
  inst.validate();
  const std::size_t n = inst.num_edges();
  std::vector<char> seen(n, 0);
  for (EdgeId e : edgeOrder) {
    if (e >= n || seen[e]) throw InputError("greedy_pair: edge order is not a permutation of edge ids");
    seen[e] = 1;
  }
  if (edgeOrder.size() != n) throw InputError("greedy_pair: edge order must cover every edge");

  const Multigraph& g = inst.graph;
  std::vector<char> usedX(g.numVertices, 0);
  std::vector<char> usedXp(g.numVertices, 0);
  std::vector<EdgeId> x;
  std::vector<EdgeId> xp;
  for (EdgeId ep : edgeOrder) {
    const EdgeId e = inst.pi(ep);
    const Edge& a = g.edges[e];
    const Edge& b = g.edges[ep];
    if (usedX[a.u] || usedX[a.v] || usedXp[b.u] || usedXp[b.v]) continue;
    usedX[a.u] = usedX[a.v] = 1;
    usedXp[b.u] = usedXp[b.v] = 1;
    x.push_back(e);
    xp.push_back(ep);
  }
  return {Matching(std::move(x)), Matching(std::move(xp))};
}

inline void require_brute_force_size(const PermMatchInstance& inst, const char* who) {
  if (inst.num_edges() > kBruteForceEdgeLimit) {
    throw LimitError(std::string(who) + ": more than 12 edges");
  }
}

struct PurePair {
  Matching y;
  Matching yPrime;
  std::size_t value = 0;
};

// max over matching pairs of |y ∩ pi(y')|, by enumeration (<= 12 edges).
inline PurePair opt_pure_pair(const PermMatchInstance& inst) {
  inst.validate();
  require_brute_force_size(inst, "opt_pure_pair");
  const auto all = enumerate_matchings(inst.graph, std::size_t{1} << kBruteForceEdgeLimit);
  PurePair best{Matching{}, Matching{}, 0};
  for (const auto& yp : all) {
    const Matching image = inst.pi.apply(yp);
    for (const auto& y : all) {
      const std::size_t v = common(y, image);
      if (v > best.value) best = {y, yp, v};
    }
  }
  return best;
}

// Plays x with probability 1/3 - eps and x' with 2/3 + eps, where (x, x')
// is the greedy pair under the canonical (ascending id) edge order.
inline TwoPointLeaderStrategy approx_leader_strategy(const PermMatchInstance& inst, double eps) {
  if (!(eps > 0.0 && eps < 1.0 / 3.0)) throw InputError("approx_leader_strategy: need 0 < eps < 1/3");
  const auto order = canonical_edge_order(inst);
  GreedyPair pair = greedy_pair(inst, order);
  const double low = 1.0 / 3.0 - eps;
  return MatchingMix{{{std::move(pair.x), low}, {std::move(pair.xPrime), 1.0 - low}}};
}

struct ApproxSolution {
  TwoPointLeaderStrategy leader;
  GreedyPair pair;
  Matching followerResponse;
  bool leaderFavoring = true;
  double leaderPayoff = 0.0;
  double followerPayoff = 0.0;
  double eps = 0.0;
  std::size_t greedyShared = 0;  // |x ∩ pi(x')|
  // Guaranteed lower bound on leaderPayoff / (SE leader payoff).
  double guaranteeFactor() const { return (1.0 - 3.0 * eps) / 12.0; }
};

inline ApproxSolution approx_solve(const PermMatchInstance& inst, double eps) {
  ApproxSolution out;
  out.eps = eps;
  out.leader = approx_leader_strategy(inst, eps);
  out.pair = {out.leader.support[0].matching, out.leader.support[1].matching};
  out.greedyShared = out.pair.shared(inst.pi);
  PmBestResponse br = follower_best_response_pm(inst, out.leader);
  out.followerResponse = std::move(br.matching);
  out.leaderFavoring = br.leaderFavoring;
  const auto [ul, uf] = pm_expected(inst, out.leader, out.followerResponse);
  out.leaderPayoff = ul;
  out.followerPayoff = uf;
  return out;
}

inline std::size_t pitim_value(const PermMatchInstance& inst, const Matching& m) {
  require_matching(inst.graph, m, "pitim_value");
  return common(m, inst.pi.apply(m));
}

struct PitimResult {
  Matching matching;
  std::size_t value = 0;
};

inline PitimResult bruteforce_pitim(const PermMatchInstance& inst) {
  inst.validate();
  require_brute_force_size(inst, "bruteforce_pitim");
  PitimResult best;
  for (const auto& m : enumerate_matchings(inst.graph, std::size_t{1} << kBruteForceEdgeLimit)) {
    const std::size_t v = common(m, inst.pi.apply(m));
    if (v > best.value) best = {m, v};
  }
  return best;
}

// The follower's pure response in a (near-)SE is itself the pi-TIM candidate;
// on yes-instances its value is close to n/2.
inline PitimResult extract_pitim_from_se(const PermMatchInstance& inst, const MatchingMix& leader,
                                         const Matching& response) {
  leader.validate(inst.graph);
  return {response, pitim_value(inst, response)};
}

struct ExplicitPmGame {
  BimatrixGame game;
  std::vector<Matching> matchings;  // row/column index -> matching
};

// Enumerates every matching as a pure strategy for both players.
inline ExplicitPmGame explicit_bimatrix(const PermMatchInstance& inst, std::size_t maxMatchings) {
  inst.validate();
  ExplicitPmGame out;
  out.matchings = enumerate_matchings(inst.graph, maxMatchings);
  const std::size_t k = out.matchings.size();
  std::vector<Matching> images;
  images.reserve(k);
  for (const auto& m : out.matchings) images.push_back(inst.pi.apply(m));
  Matrix ul(k, std::vector<double>(k));
  Matrix uf(k, std::vector<double>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      ul[i][j] = static_cast<double>(common(out.matchings[i], images[j]));
      uf[i][j] = static_cast<double>(common(out.matchings[i], out.matchings[j]));
    }
  }
  out.game = BimatrixGame(std::move(ul), std::move(uf));
  return out;
}

// Converts a bimatrix leader strategy over explicit_bimatrix rows back into
// a matching mix (zero-probability rows dropped).
inline MatchingMix to_matching_mix(const ExplicitPmGame& g, const MixedStrategy& x) {
  MatchingMix mix;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) mix.support.push_back({g.matchings[i], x[i]});
  }
  return mix;
}

}  // namespace stackel::pm

#endif  // STACKEL_PERM_MATCHING_HPP_
