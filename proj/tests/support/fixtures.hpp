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

// Hand-built instances shared by the unit and acceptance suites.

#ifndef STACKEL_TESTS_FIXTURES_HPP_
#define STACKEL_TESTS_FIXTURES_HPP_

#include <string>
#include <vector>

#include "stackel/stackel.hpp"

namespace stackel::testing {

// Rows U, D; columns L, R. Leader payoff first in each cell:
//        L       R
//   U  (1, 1)  (10, 0)
//   D  (0, 0)  ( 5, 1)
inline BimatrixGame two_by_two_commitment_game() {
  return BimatrixGame({{1, 10}, {0, 5}}, {{1, 0}, {0, 1}});
}

inline constexpr std::size_t kVertexS = 0;
inline constexpr std::size_t kVertexA = 1;
inline constexpr std::size_t kVertexB = 2;
inline constexpr std::size_t kVertexT = 3;

// Road network s-a-b-t (unit costs) with `parallel` copies of an s-b bypass
// costing 2.2 and of an a-t bypass costing 2.4. Follower rewards are minus
// costs; the leader has no extra reward. Elements: sa, ab, bt, sb1.., at1..
inline incentive::IncentiveInstance toll_road_network(std::size_t parallel = 3) {
  incentive::IncentiveInstance inst;
  incentive::PathFamily pf;
  pf.numVertices = 4;
  pf.source = kVertexS;
  pf.sink = kVertexT;
  auto add = [&](const std::string& id, double cost, std::size_t u, std::size_t v) {
    pf.edges.push_back({inst.elements.size(), u, v});
    inst.elements.push_back({id, -cost, 0.0});
  };
  add("sa", 1.0, kVertexS, kVertexA);
  add("ab", 1.0, kVertexA, kVertexB);
  add("bt", 1.0, kVertexB, kVertexT);
  for (std::size_t k = 1; k <= parallel; ++k) add("sb" + std::to_string(k), 2.2, kVertexS, kVertexB);
  for (std::size_t k = 1; k <= parallel; ++k) add("at" + std::to_string(k), 2.4, kVertexA, kVertexT);
  inst.family = std::move(pf);
  inst.validate();
  return inst;
}

inline incentive::SetKey ids_to_key(const incentive::IncentiveInstance& inst, const std::vector<std::string>& ids) {
  incentive::SetKey key;
  for (const auto& id : ids) key.push_back(inst.index_of(id));
  std::sort(key.begin(), key.end());
  return key;
}

// Two disjoint edges e0=(0,1), e1=(2,3) with pi swapping them.
inline pm::PermMatchInstance swap_pair() {
  pm::PermMatchInstance inst;
  inst.graph.numVertices = 4;
  inst.graph.edges = {{0, 1}, {2, 3}};
  inst.pi.image = {1, 0};
  inst.validate();
  return inst;
}

}  // namespace stackel::testing

#endif  // STACKEL_TESTS_FIXTURES_HPP_
