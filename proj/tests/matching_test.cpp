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

#include <vector>

#include "stackel/matching.hpp"
#include "stackel/random.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

namespace {

namespace pm = stackel::pm;
using stackel::testing::exhaustive_max_weight;
using stackel::testing::matching_masks;

pm::Multigraph triangle() { return {3, {{0, 1}, {1, 2}, {0, 2}}}; }

std::vector<double> random_weights(stackel::Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  for (double& v : w) v = rng.uniform(-0.2, 1.0);
  return w;
}

TEST(Matching, IsMatching) {
  const auto g = triangle();
  EXPECT_TRUE(pm::is_matching(g, pm::Matching{}));
  EXPECT_TRUE(pm::is_matching(g, pm::Matching({1})));
  EXPECT_FALSE(pm::is_matching(g, pm::Matching({0, 1})));
  EXPECT_FALSE(pm::is_matching(g, pm::Matching({5})));
  const pm::Multigraph parallel{2, {{0, 1}, {0, 1}}};
  EXPECT_FALSE(pm::is_matching(parallel, pm::Matching({0, 1})));
}

TEST(Matching, ConstructorSortsAndDeduplicates) {
  EXPECT_EQ(pm::Matching({3, 1, 3}).edges, (std::vector<pm::EdgeId>{1, 3}));
}

TEST(Matching, CommonAndDist) {
  const pm::Matching x({0, 2, 4});
  const pm::Matching y({2, 3});
  const auto cd = pm::common_dist(x, y);
  EXPECT_EQ(cd.common, 1U);
  EXPECT_EQ(cd.dist, 3U);
  EXPECT_EQ(pm::common_dist(x, x).dist, 0U);
}

TEST(Matching, DistIsAMetricOnCorpusMatchings) {
  for (const auto& inst : stackel::testing::pm_corpus(40)) {
    const auto all = pm::enumerate_matchings(inst.graph, 1000);
    for (const auto& a : all) {
      for (const auto& b : all) {
        EXPECT_EQ(pm::common_dist(a, b).dist, pm::common_dist(b, a).dist);
        for (const auto& c : all) {
          EXPECT_LE(pm::common_dist(a, c).dist, pm::common_dist(a, b).dist + pm::common_dist(b, c).dist);
        }
      }
    }
  }
}

TEST(Matching, GraphValidation) {
  EXPECT_THROW((pm::Multigraph{2, {{0, 0}}}.validate()), stackel::InputError);
  EXPECT_THROW((pm::Multigraph{2, {{0, 2}}}.validate()), stackel::InputError);
  EXPECT_NO_THROW((pm::Multigraph{2, {{0, 1}, {1, 0}}}.validate()));
}

TEST(EnumerateMatchings, CountsMatchMasks) {
  EXPECT_EQ(pm::enumerate_matchings(triangle(), 100).size(), 4U);
  EXPECT_EQ(pm::enumerate_matchings(pm::Multigraph{}, 100).size(), 1U);
  for (const auto& inst : stackel::testing::pm_corpus()) {
    const auto all = pm::enumerate_matchings(inst.graph, 1U << 12);
    EXPECT_EQ(all.size(), matching_masks(inst.graph).size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      EXPECT_TRUE(pm::is_matching(inst.graph, all[i]));
      if (i > 0) {
        EXPECT_TRUE(all[i - 1].size() < all[i].size() ||
                    (all[i - 1].size() == all[i].size() && all[i - 1].edges < all[i].edges));
      }
    }
  }
}

TEST(EnumerateMatchings, Limit) {
  EXPECT_THROW(pm::enumerate_matchings(triangle(), 3), stackel::LimitError);
  EXPECT_NO_THROW(pm::enumerate_matchings(triangle(), 4));
}

TEST(MaxWeightMatching, Triangle) {
  const std::vector<double> w{1.0, 2.0, 1.5};
  const auto m = pm::max_weight_matching(triangle(), w);
  EXPECT_EQ(m.edges, (std::vector<pm::EdgeId>{1}));
}

TEST(MaxWeightMatching, PathPrefersTwoOuterEdges) {
  const pm::Multigraph path{4, {{0, 1}, {1, 2}, {2, 3}}};
  const std::vector<double> w{1.0, 1.5, 1.0};
  EXPECT_EQ(pm::max_weight_matching(path, w).edges, (std::vector<pm::EdgeId>{0, 2}));
}

TEST(MaxWeightMatching, NonPositiveWeightsGiveEmpty) {
  const std::vector<double> w{0.0, -1.0, 0.0};
  EXPECT_TRUE(pm::max_weight_matching(triangle(), w).empty());
}

TEST(MaxWeightMatching, TiesPickLexicographicallySmallest) {
  const pm::Multigraph parallel{2, {{0, 1}, {0, 1}, {0, 1}}};
  const std::vector<double> w{0.5, 1.0, 1.0};
  EXPECT_EQ(pm::max_weight_matching(parallel, w).edges, (std::vector<pm::EdgeId>{1}));
}

TEST(MaxWeightMatching, RejectsBadInput) {
  EXPECT_THROW(pm::max_weight_matching(triangle(), std::vector<double>{1.0}), stackel::InputError);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(pm::max_weight_matching(triangle(), std::vector<double>{nan, 1.0, 1.0}), stackel::InputError);
}

TEST(MaxWeightMatching, NodeLimit) {
  stackel::Rng rng(3);
  const auto inst = stackel::random_pm(rng, 8, 10);
  const std::vector<double> w(10, 1.0);
  EXPECT_THROW(pm::max_weight_matching(inst.graph, w, 2), stackel::LimitError);
}

TEST(MaxWeightMatching, EqualsExhaustiveOnCorpus) {
  stackel::Rng rng(17);
  for (const auto& inst : stackel::testing::pm_corpus()) {
    for (int t = 0; t < 5; ++t) {
      const auto w = random_weights(rng, inst.num_edges());
      const auto m = pm::max_weight_matching(inst.graph, w);
      EXPECT_TRUE(pm::is_matching(inst.graph, m));
      EXPECT_NEAR(pm::matching_weight(m, w), exhaustive_max_weight(inst.graph, w), 1e-12);
    }
  }
}

TEST(MaxWeightMatching, EqualsExhaustiveOnTenEdgeGraphs) {
  stackel::Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    const auto inst = stackel::random_pm(rng, rng.between(3, 8), 10);
    const auto w = random_weights(rng, 10);
    EXPECT_NEAR(pm::matching_weight(pm::max_weight_matching(inst.graph, w), w),
                exhaustive_max_weight(inst.graph, w), 1e-12);
  }
}

}  // namespace
