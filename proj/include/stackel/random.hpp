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

// Seeded instance generators.
//
// The engine is std::mt19937_64 (MT19937-64, fully specified by the C++
// standard). Distributions are defined here rather than taken from <random>,
// whose distribution algorithms are implementation-defined:
//   real in [0,1):  (r >> 11) * 2^-53
//   integer [0,n):  rejection of r >= floor(2^64 / n) * n, then r % n
// so a seed produces the same instances with every conforming compiler.

#ifndef STACKEL_RANDOM_HPP_
#define STACKEL_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "stackel/errors.hpp"
#include "stackel/game.hpp"
#include "stackel/incentive.hpp"
#include "stackel/perm_matching.hpp"
#include "stackel/reduction.hpp"

namespace stackel {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform on [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw InputError("Rng::below: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
    std::uint64_t r = next();
    while (r >= limit) r = next();
    return r % n;
  }

  // Uniform on [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

  bool bernoulli(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

inline BimatrixGame random_bimatrix(Rng& rng, std::size_t n, std::size_t m, double lo = 0.0, double hi = 1.0) {
  if (n == 0 || m == 0) throw InputError("random_bimatrix: n and m must be >= 1");
  if (!(lo <= hi)) throw InputError("random_bimatrix: lo > hi");
  Matrix ul(n, std::vector<double>(m));
  Matrix uf(n, std::vector<double>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      ul[i][j] = rng.uniform(lo, hi);
      uf[i][j] = rng.uniform(lo, hi);
    }
  }
  return BimatrixGame(std::move(ul), std::move(uf));
}

inline std::vector<pm::EdgeId> random_edge_order(Rng& rng, std::size_t numEdges) {
  std::vector<pm::EdgeId> order(numEdges);
  for (std::size_t i = 0; i < numEdges; ++i) order[i] = i;
  rng.shuffle(order);
  return order;
}

// Uniform endpoints (u != v, parallel edges allowed) and a uniform pi.
inline pm::PermMatchInstance random_pm(Rng& rng, std::size_t vertices, std::size_t edges) {
  if (edges > 0 && vertices < 2) throw InputError("random_pm: edges need at least 2 vertices");
  pm::PermMatchInstance inst;
  inst.graph.numVertices = vertices;
  for (std::size_t k = 0; k < edges; ++k) {
    const std::size_t u = rng.below(vertices);
    std::size_t v = rng.below(vertices - 1);
    if (v >= u) ++v;
    inst.graph.edges.push_back({u, v});
  }
  inst.pi.image = random_edge_order(rng, edges);
  inst.validate();
  return inst;
}

// `count` triples drawn uniformly from A x B x C (repeats allowed).
inline pm::ThreeDMInstance random_3dm(Rng& rng, std::size_t nA, std::size_t nB, std::size_t nC,
                                      std::size_t count) {
  if (count > 0 && (nA == 0 || nB == 0 || nC == 0)) throw InputError("random_3dm: empty part");
  pm::ThreeDMInstance tdm{nA, nB, nC, {}};
  for (std::size_t t = 0; t < count; ++t) tdm.triples.push_back({rng.below(nA), rng.below(nB), rng.below(nC)});
  return tdm;
}

// Every triple of A x B x C independently with probability `density`.
inline pm::ThreeDMInstance random_3dm_density(Rng& rng, std::size_t nA, std::size_t nB, std::size_t nC,
                                              double density) {
  if (!(density >= 0.0 && density <= 1.0)) throw InputError("random_3dm: density must lie in [0, 1]");
  pm::ThreeDMInstance tdm{nA, nB, nC, {}};
  for (std::size_t a = 0; a < nA; ++a) {
    for (std::size_t b = 0; b < nB; ++b) {
      for (std::size_t c = 0; c < nC; ++c) {
        if (rng.bernoulli(density)) tdm.triples.push_back({a, b, c});
      }
    }
  }
  return tdm;
}

// Rewards c_e, C_e uniform in [lo, hi]; each set a uniform nonempty subset.
inline incentive::IncentiveInstance random_explicit_incentive(Rng& rng, std::size_t elements, std::size_t sets,
                                                              double lo = -1.0, double hi = 1.0) {
  if (elements == 0 || sets == 0) throw InputError("random_explicit_incentive: sizes must be >= 1");
  if (elements > 62) throw InputError("random_explicit_incentive: at most 62 elements");
  incentive::IncentiveInstance inst;
  for (std::size_t e = 0; e < elements; ++e) {
    const double c = rng.uniform(lo, hi);
    const double bigC = rng.uniform(lo, hi);
    inst.elements.push_back({"e" + std::to_string(e), c, bigC});
  }
  incentive::ExplicitFamily fam;
  const std::uint64_t masks = (std::uint64_t{1} << elements) - 1;
  for (std::size_t s = 0; s < sets; ++s) {
    const std::uint64_t mask = 1 + rng.below(masks);
    incentive::SetKey key;
    for (std::size_t e = 0; e < elements; ++e) {
      if (mask >> e & 1U) key.push_back(e);
    }
    fam.sets.push_back(std::move(key));
  }
  inst.family = std::move(fam);
  inst.validate();
  return inst;
}

}  // namespace stackel

#endif  // STACKEL_RANDOM_HPP_
