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

// Multigraphs, matchings as sorted edge-id sets, and exact (exponential,
// desk-scale) matching search.

#ifndef STACKEL_MATCHING_HPP_
#define STACKEL_MATCHING_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stackel/errors.hpp"

namespace stackel::pm {

using EdgeId = std::size_t;

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
};

// Edge ids are positions in `edges`. Parallel edges are allowed, loops are not.
struct Multigraph {
  std::size_t numVertices = 0;
  std::vector<Edge> edges;

  std::size_t num_edges() const { return edges.size(); }

  bool adjacent(EdgeId a, EdgeId b) const {
    const Edge& x = edges[a];
    const Edge& y = edges[b];
    return x.u == y.u || x.u == y.v || x.v == y.u || x.v == y.v;
  }

  void validate() const {
    for (const Edge& e : edges) {
      if (e.u >= numVertices || e.v >= numVertices) {
        throw InputError("multigraph: edge endpoint out of range");
      }
      if (e.u == e.v) throw InputError("multigraph: self-loops are not allowed");
    }
  }
};

struct Matching {
  std::vector<EdgeId> edges;  // sorted, unique

  Matching() = default;
  explicit Matching(std::vector<EdgeId> ids) : edges(std::move(ids)) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }

  std::size_t size() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
  bool contains(EdgeId e) const { return std::binary_search(edges.begin(), edges.end(), e); }

  friend bool operator==(const Matching&, const Matching&) = default;
  friend auto operator<=>(const Matching& a, const Matching& b) { return a.edges <=> b.edges; }
};

inline bool is_matching(const Multigraph& g, const Matching& m) {
  std::vector<char> used(g.numVertices, 0);
  for (EdgeId e : m.edges) {
    if (e >= g.num_edges()) return false;
    const Edge& ed = g.edges[e];
    if (used[ed.u] || used[ed.v]) return false;
    used[ed.u] = used[ed.v] = 1;
  }
  return true;
}

inline void require_matching(const Multigraph& g, const Matching& m, const char* who) {
  if (!is_matching(g, m)) throw InputError(std::string(who) + ": not a matching of the graph");
}

inline std::size_t common(const Matching& x, const Matching& y) {
  std::size_t c = 0;
  auto i = x.edges.begin();
  auto j = y.edges.begin();
  while (i != x.edges.end() && j != y.edges.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++c;
      ++i;
      ++j;
    }
  }
  return c;
}

struct CommonDist {
  std::size_t common = 0;
  std::size_t dist = 0;
};

// common = |x ∩ y|, dist = |x| + |y| - 2 common (symmetric difference size).
inline CommonDist common_dist(const Matching& x, const Matching& y) {
  const std::size_t c = common(x, y);
  return {c, x.size() + y.size() - 2 * c};
}

// Every matching of `g` (∅ included), ordered by size and then
// lexicographically by edge ids. Throws LimitError past `limit` matchings.
inline std::vector<Matching> enumerate_matchings(const Multigraph& g, std::size_t limit) {
  std::vector<Matching> out;
  std::vector<EdgeId> chosen;
  std::vector<char> used(g.numVertices, 0);
  auto rec = [&](auto&& self, EdgeId next) -> void {
    if (out.size() >= limit) {
      throw LimitError("enumerate_matchings: more than " + std::to_string(limit) + " matchings");
    }
    out.emplace_back(chosen);
    for (EdgeId e = next; e < g.num_edges(); ++e) {
      const Edge& ed = g.edges[e];
      if (used[ed.u] || used[ed.v]) continue;
      used[ed.u] = used[ed.v] = 1;
      chosen.push_back(e);
      self(self, e + 1);
      chosen.pop_back();
      used[ed.u] = used[ed.v] = 0;
    }
  };
  rec(rec, 0);
  std::stable_sort(out.begin(), out.end(), [](const Matching& a, const Matching& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.edges < b.edges;
  });
  return out;
}

inline double matching_weight(const Matching& m, std::span<const double> weights) {
  double w = 0.0;
  for (EdgeId e : m.edges) w += weights[e];
  return w;
}

inline constexpr std::size_t kDefaultSearchNodeLimit = std::size_t{1} << 26;

// Exact maximum-weight matching by include-first branch and bound over the
// positive-weight edges in id order. Edges with weight <= 0 are never used.
// Among equal-weight optima (within 1e-12) the lexicographically smallest
// sorted edge-id set wins.
inline Matching max_weight_matching(const Multigraph& g, std::span<const double> weights,
                                    std::size_t nodeLimit = kDefaultSearchNodeLimit) {
  if (weights.size() != g.num_edges()) {
    throw InputError("max_weight_matching: one weight per edge required");
  }
  std::vector<EdgeId> cand;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!(weights[e] > 0.0) && weights[e] != weights[e]) {
      throw InputError("max_weight_matching: NaN weight");
    }
    if (weights[e] > 0.0) cand.push_back(e);
  }
  std::vector<double> suffix(cand.size() + 1, 0.0);
  for (std::size_t k = cand.size(); k-- > 0;) suffix[k] = suffix[k + 1] + weights[cand[k]];

  std::vector<char> used(g.numVertices, 0);
  std::vector<EdgeId> chosen;
  std::vector<EdgeId> best;
  double bestWeight = 0.0;
  std::size_t nodes = 0;
  auto rec = [&](auto&& self, std::size_t k, double w) -> void {
    if (++nodes > nodeLimit) throw LimitError("max_weight_matching: search node limit exceeded");
    if (w > bestWeight + 1e-12) {
      bestWeight = w;
      best = chosen;
    }
    if (k == cand.size() || w + suffix[k] <= bestWeight + 1e-12) return;
    const EdgeId e = cand[k];
    const Edge& ed = g.edges[e];
    if (!used[ed.u] && !used[ed.v]) {
      used[ed.u] = used[ed.v] = 1;
      chosen.push_back(e);
      self(self, k + 1, w + weights[e]);
      chosen.pop_back();
      used[ed.u] = used[ed.v] = 0;
    }
    self(self, k + 1, w);
  };
  rec(rec, 0, 0.0);
  return Matching(best);
}

}  // namespace stackel::pm

#endif  // STACKEL_MATCHING_HPP_
