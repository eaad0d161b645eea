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

// 3-dimensional matching -> pi-TIM.
//
// Each triple (a, b, c) becomes two edges (a', b') and (a'', c') of a
// bipartite multigraph, and pi swaps them. A 3D matching of size k lifts to a
// matching M' with |M' ∩ pi(M')| = 2k, and any matching extracts back to the
// triples whose two edges it contains.

#ifndef STACKEL_REDUCTION_HPP_
#define STACKEL_REDUCTION_HPP_

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "stackel/errors.hpp"
#include "stackel/matching.hpp"
#include "stackel/perm_matching.hpp"

namespace stackel::pm {

using Triple = std::array<std::size_t, 3>;

struct ThreeDMInstance {
  std::size_t nA = 0;
  std::size_t nB = 0;
  std::size_t nC = 0;
  std::vector<Triple> triples;

  void validate() const {
    for (const Triple& t : triples) {
      if (t[0] >= nA || t[1] >= nB || t[2] >= nC) {
        throw InputError("3dm: triple index out of range");
      }
    }
  }
};

inline bool is_3d_matching(const ThreeDMInstance& tdm, const std::vector<std::size_t>& selected) {
  std::vector<char> a(tdm.nA, 0), b(tdm.nB, 0), c(tdm.nC, 0), picked(tdm.triples.size(), 0);
  for (std::size_t t : selected) {
    if (t >= tdm.triples.size() || picked[t]) return false;
    picked[t] = 1;
    const Triple& tr = tdm.triples[t];
    if (a[tr[0]] || b[tr[1]] || c[tr[2]]) return false;
    a[tr[0]] = b[tr[1]] = c[tr[2]] = 1;
  }
  return true;
}

// Vertex layout of the reduced graph: A' = [0, nA), A'' = [nA, 2nA),
// B' = [2nA, 2nA + nB), C' = [2nA + nB, 2nA + nB + nC).
struct ReductionMap {
  ThreeDMInstance source;
  std::vector<std::pair<EdgeId, EdgeId>> perTriple;  // (a'b' edge, a''c' edge)

  std::size_t a_prime(std::size_t a) const { return a; }
  std::size_t a_double_prime(std::size_t a) const { return source.nA + a; }
  std::size_t b_prime(std::size_t b) const { return 2 * source.nA + b; }
  std::size_t c_prime(std::size_t c) const { return 2 * source.nA + source.nB + c; }
  std::size_t num_vertices() const { return 2 * source.nA + source.nB + source.nC; }
};

inline std::pair<PermMatchInstance, ReductionMap> reduce_3dm(const ThreeDMInstance& tdm) {
  tdm.validate();
  ReductionMap map;
  map.source = tdm;
  PermMatchInstance inst;
  inst.graph.numVertices = map.num_vertices();
  for (const Triple& t : tdm.triples) {
    const EdgeId ab = inst.graph.edges.size();
    inst.graph.edges.push_back({map.a_prime(t[0]), map.b_prime(t[1])});
    inst.graph.edges.push_back({map.a_double_prime(t[0]), map.c_prime(t[2])});
    map.perTriple.emplace_back(ab, ab + 1);
    inst.pi.image.push_back(ab + 1);
    inst.pi.image.push_back(ab);
  }
  inst.validate();
  return {std::move(inst), std::move(map)};
}

// Rebuilds the reduced graph from the map alone.
inline Multigraph reduced_graph(const ReductionMap& map) {
  Multigraph g;
  g.numVertices = map.num_vertices();
  g.edges.resize(2 * map.perTriple.size());
  for (std::size_t t = 0; t < map.perTriple.size(); ++t) {
    const Triple& tr = map.source.triples[t];
    g.edges[map.perTriple[t].first] = {map.a_prime(tr[0]), map.b_prime(tr[1])};
    g.edges[map.perTriple[t].second] = {map.a_double_prime(tr[0]), map.c_prime(tr[2])};
  }
  return g;
}

inline Matching lift_3dm(const ReductionMap& map, const std::vector<std::size_t>& selected) {
  if (!is_3d_matching(map.source, selected)) throw InputError("lift_3dm: selection is not a 3D matching");
  std::vector<EdgeId> edges;
  for (std::size_t t : selected) {
    edges.push_back(map.perTriple[t].first);
    edges.push_back(map.perTriple[t].second);
  }
  return Matching(std::move(edges));
}

// Triples (ascending) with both of their edges in `m`.
inline std::vector<std::size_t> extract_3dm(const ReductionMap& map, const Matching& m) {
  require_matching(reduced_graph(map), m, "extract_3dm");
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < map.perTriple.size(); ++t) {
    if (m.contains(map.perTriple[t].first) && m.contains(map.perTriple[t].second)) out.push_back(t);
  }
  return out;
}

inline constexpr std::size_t kBruteForceTripleLimit = 20;

// Maximum 3D matching by subset enumeration.
inline std::vector<std::size_t> bruteforce_3dm(const ThreeDMInstance& tdm) {
  tdm.validate();
  const std::size_t k = tdm.triples.size();
  if (k > kBruteForceTripleLimit) throw LimitError("bruteforce_3dm: more than 20 triples");
  std::vector<std::size_t> best;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<std::size_t> sel;
    for (std::size_t t = 0; t < k; ++t) {
      if (mask >> t & 1U) sel.push_back(t);
    }
    if (sel.size() > best.size() && is_3d_matching(tdm, sel)) best = std::move(sel);
  }
  return best;
}

}  // namespace stackel::pm

#endif  // STACKEL_REDUCTION_HPP_
