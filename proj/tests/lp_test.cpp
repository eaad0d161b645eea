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

#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include <optional>
#include <vector>

#include "stackel/lp.hpp"
#include "stackel/random.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

namespace {

using stackel::lp::LinearProgram;
using stackel::lp::LpStatus;
using Rational = boost::multiprecision::cpp_rational;

TEST(LpSolve, SingleUpperRow) {
  LinearProgram lp(1);
  lp.objective = {1.0};
  lp.add_leq({1.0}, 3.0);
  const auto sol = stackel::lp::solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.values[0], 3.0, 1e-12);
  EXPECT_NEAR(sol.objectiveValue, 3.0, 1e-12);
}

TEST(LpSolve, TwoVariableMatchesVertexEnumeration) {
  LinearProgram lp(2);
  lp.objective = {1.0, 1.0};
  lp.add_leq({1.0, 2.0}, 4.0);
  lp.add_leq({3.0, 1.0}, 6.0);
  const auto sol = stackel::lp::solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  const auto oracle = stackel::testing::vertex_enumeration_2d(1.0, 1.0, {{1, 2, 4}, {3, 1, 6}});
  ASSERT_TRUE(oracle.has_value());
  EXPECT_NEAR(sol.objectiveValue, *oracle, 1e-9);
  EXPECT_NEAR(sol.values[0], 1.6, 1e-9);
  EXPECT_NEAR(sol.values[1], 1.2, 1e-9);
}

TEST(LpSolve, ContradictoryBoundsAreInfeasible) {
  LinearProgram lp(1);
  lp.objective = {1.0};
  lp.add_leq({1.0}, 1.0);
  lp.add_leq({-1.0}, -2.0);
  EXPECT_EQ(stackel::lp::solve(lp).status, LpStatus::kInfeasible);
}

TEST(LpSolve, UnboundedDetected) {
  LinearProgram lp(2);
  lp.objective = {1.0, 0.0};
  lp.add_leq({-1.0, 1.0}, 1.0);
  EXPECT_EQ(stackel::lp::solve(lp).status, LpStatus::kUnbounded);
}

TEST(LpSolve, FreeVariableAndEquality) {
  // max v s.t. v <= 2 x, v <= 1 - x, x in [0, 1]; optimum x = 1/3, v = 2/3.
  LinearProgram lp(2);
  lp.objective = {0.0, 1.0};
  lp.lowerBounds[1] = std::nullopt;
  lp.upperBounds[0] = 1.0;
  lp.add_leq({-2.0, 1.0}, 0.0);
  lp.add_leq({1.0, 1.0}, 1.0);
  const auto sol = stackel::lp::solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.values[0], 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(sol.values[1], 2.0 / 3.0, 1e-12);
}

TEST(LpSolve, NegativeFreeOptimum) {
  // max v s.t. v <= -5; v free.
  LinearProgram lp(1);
  lp.objective = {1.0};
  lp.lowerBounds[0] = std::nullopt;
  lp.add_leq({1.0}, -5.0);
  const auto sol = stackel::lp::solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.values[0], -5.0, 1e-12);
}

TEST(LpSolve, ShiftedLowerAndUpperOnlyBounds) {
  // max x - y, 2 <= x <= 4, y <= -1 (no lower bound): x = 4, y -> -inf.
  LinearProgram lp(2);
  lp.objective = {1.0, -1.0};
  lp.lowerBounds = {2.0, std::nullopt};
  lp.upperBounds = {4.0, -1.0};
  EXPECT_EQ(stackel::lp::solve(lp).status, LpStatus::kUnbounded);
  lp.objective = {1.0, 1.0};
  const auto sol = stackel::lp::solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.values[0], 4.0, 1e-12);
  EXPECT_NEAR(sol.values[1], -1.0, 1e-12);
}

TEST(LpSolve, EqualityWithRedundantRow) {
  LinearProgram lp(3);
  lp.objective = {1.0, 2.0, 3.0};
  lp.add_eq({1.0, 1.0, 1.0}, 1.0);
  lp.add_eq({2.0, 2.0, 2.0}, 2.0);
  const auto sol = stackel::lp::solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objectiveValue, 3.0, 1e-12);
}

TEST(LpSolve, InconsistentEqualitiesInfeasible) {
  LinearProgram lp(2);
  lp.add_eq({1.0, 1.0}, 1.0);
  lp.add_eq({1.0, 1.0}, 2.0);
  EXPECT_EQ(stackel::lp::solve(lp).status, LpStatus::kInfeasible);
}

// A textbook program on which the largest-coefficient rule cycles.
TEST(LpSolve, DegenerateCyclingExampleTerminates) {
  LinearProgram lp(4);
  lp.objective = {0.75, -150.0, 0.02, -6.0};
  lp.add_leq({0.25, -60.0, -0.04, 9.0}, 0.0);
  lp.add_leq({0.5, -90.0, -0.02, 3.0}, 0.0);
  lp.add_leq({0.0, 0.0, 1.0, 0.0}, 1.0);
  const auto sol = stackel::lp::solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objectiveValue, 0.05, 1e-12);
}

TEST(LpSolve, RejectsMalformedProgram) {
  LinearProgram lp(2);
  lp.add_leq({1.0}, 1.0);
  EXPECT_THROW(stackel::lp::solve(lp), stackel::InputError);
  LinearProgram bad(1);
  bad.lowerBounds[0] = 2.0;
  bad.upperBounds[0] = 1.0;
  EXPECT_THROW(stackel::lp::solve(bad), stackel::InputError);
}

TEST(LpSolve, ExactRationalArithmetic) {
  stackel::lp::BasicLinearProgram<Rational> lp(2);
  lp.objective = {Rational(1), Rational(1)};
  lp.add_leq({Rational(1), Rational(2)}, Rational(4));
  lp.add_leq({Rational(3), Rational(1)}, Rational(6));
  const auto sol = stackel::lp::solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.values[0], Rational(8, 5));
  EXPECT_EQ(sol.values[1], Rational(6, 5));
  EXPECT_EQ(sol.objectiveValue, Rational(14, 5));
}

// Random bounded programs: double and exact rational agree, and the
// rational optimum satisfies every row exactly.
TEST(LpSolve, DoubleAgreesWithRationalOnRandomPrograms) {
  stackel::Rng rng(stackel::testing::kLpSeed + 7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = rng.between(2, 5);
    const std::size_t rows = rng.between(1, 6);
    LinearProgram d(n);
    stackel::lp::BasicLinearProgram<Rational> r(n);
    auto draw = [&](int lo, int hi) { return static_cast<int>(rng.between(0, hi - lo)) + lo; };
    for (std::size_t k = 0; k < n; ++k) {
      const int c = draw(-5, 5);
      d.objective[k] = c;
      r.objective[k] = c;
      d.upperBounds[k] = 10.0;
      r.upperBounds[k] = Rational(10);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      std::vector<double> cd(n);
      std::vector<Rational> cr(n);
      for (std::size_t k = 0; k < n; ++k) {
        const int a = draw(-4, 6);
        cd[k] = a;
        cr[k] = a;
      }
      const int b = draw(-3, 12);
      d.add_leq(cd, b);
      r.add_leq(cr, Rational(b));
    }
    if (trial % 3 == 0) {
      d.add_eq(std::vector<double>(n, 1.0), 3.0);
      r.add_eq(std::vector<Rational>(n, Rational(1)), Rational(3));
    }
    const auto sd = stackel::lp::solve(d);
    const auto sr = stackel::lp::solve(r);
    ASSERT_EQ(sd.status, sr.status) << "trial " << trial;
    if (!sr.optimal()) continue;
    EXPECT_NEAR(sd.objectiveValue, sr.objectiveValue.convert_to<double>(), 1e-8) << "trial " << trial;
    EXPECT_EQ(stackel::lp::max_violation(r, std::span<const Rational>(sr.values)), Rational(0));
    EXPECT_LE(stackel::lp::max_violation(d, std::span<const double>(sd.values)), 1e-8);
  }
}

TEST(LpSolve, RandomTwoVariableProgramsMatchVertexEnumeration) {
  stackel::Rng rng(stackel::testing::kLpSeed);
  for (int trial = 0; trial < 20; ++trial) {
    const double cx = rng.uniform(-1, 1);
    const double cy = rng.uniform(-1, 1);
    std::vector<stackel::testing::Halfplane> rows{{1, 0, rng.uniform(1, 5)}, {0, 1, rng.uniform(1, 5)}};
    const std::size_t extra = rng.between(1, 4);
    for (std::size_t i = 0; i < extra; ++i) rows.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 3)});
    LinearProgram lp(2);
    lp.objective = {cx, cy};
    for (const auto& h : rows) lp.add_leq({h.a, h.b}, h.rhs);
    const auto sol = stackel::lp::solve(lp);
    const auto ref = stackel::testing::vertex_enumeration_2d(cx, cy, rows);
    if (!ref) {
      EXPECT_EQ(sol.status, LpStatus::kInfeasible);
      continue;
    }
    ASSERT_EQ(sol.status, LpStatus::kOptimal);
    EXPECT_NEAR(sol.objectiveValue, *ref, 1e-8);
  }
}

TEST(LpSolve, RedundantRowDoesNotMoveOptimum) {
  LinearProgram lp(2);
  lp.objective = {2.0, 3.0};
  lp.add_leq({1.0, 1.0}, 4.0);
  lp.add_leq({1.0, 3.0}, 6.0);
  const double before = stackel::lp::solve(lp).objectiveValue;
  lp.add_leq({2.0, 2.0}, 9.0);
  EXPECT_NEAR(stackel::lp::solve(lp).objectiveValue, before, 1e-8);
}

TEST(LpGeneration, VacuousOracleEqualsPlainSolve) {
  LinearProgram lp(2);
  lp.objective = {1.0, 1.0};
  lp.add_leq({1.0, 2.0}, 4.0);
  lp.add_leq({3.0, 1.0}, 6.0);
  const auto gen = stackel::lp::solve_with_generation(
      lp, [](std::span<const double>) { return std::optional<stackel::lp::Cut>{}; }, 1e-7, 5);
  const auto plain = stackel::lp::solve(lp);
  ASSERT_TRUE(gen.optimal());
  EXPECT_EQ(gen.rounds, 1U);
  EXPECT_EQ(gen.values, plain.values);
}

// Hidden family x_i + x_j <= 1 over all pairs, discovered one cut at a time.
TEST(LpGeneration, RecoversMaterializedOptimum) {
  const std::size_t n = 4;
  LinearProgram base(n);
  base.objective = {1.0, 2.0, 3.0, 4.0};
  for (std::size_t k = 0; k < n; ++k) base.upperBounds[k] = 1.0;
  LinearProgram full = base;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<double> row(n, 0.0);
      row[i] = row[j] = 1.0;
      full.add_leq(row, 1.0);
    }
  }
  auto oracle = [&](std::span<const double> x) -> std::optional<stackel::lp::Cut> {
    double worst = 0.0;
    std::optional<stackel::lp::Cut> cut;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (x[i] + x[j] - 1.0 > worst) {
          worst = x[i] + x[j] - 1.0;
          std::vector<double> row(n, 0.0);
          row[i] = row[j] = 1.0;
          cut = stackel::lp::Cut{row, 1.0, worst};
        }
      }
    }
    return cut;
  };
  const auto gen = stackel::lp::solve_with_generation(base, oracle, 1e-7, 50);
  const auto ref = stackel::lp::solve(full);
  ASSERT_TRUE(gen.optimal());
  EXPECT_NEAR(gen.objectiveValue, ref.objectiveValue, 1e-8);
  EXPECT_GT(gen.rounds, 1U);
  EXPECT_LE(stackel::lp::max_violation(full, std::span<const double>(gen.values)), 1e-7);
}

TEST(LpGeneration, RoundLimitReportsLastIterate) {
  LinearProgram lp(1);
  lp.objective = {1.0};
  lp.add_leq({1.0}, 10.0);
  // Always claims a violation with a cut that never binds.
  auto oracle = [](std::span<const double>) {
    return std::optional<stackel::lp::Cut>(stackel::lp::Cut{{1.0}, 100.0, 1.0});
  };
  const auto sol = stackel::lp::solve_with_generation(lp, oracle, 1e-7, 3);
  EXPECT_EQ(sol.status, LpStatus::kRoundLimit);
  EXPECT_EQ(sol.rounds, 3U);
  ASSERT_EQ(sol.values.size(), 1U);
  EXPECT_NEAR(sol.values[0], 10.0, 1e-12);
}

TEST(LpGeneration, PropagatesInfeasibleBase) {
  LinearProgram lp(1);
  lp.add_leq({1.0}, -1.0);
  const auto sol = stackel::lp::solve_with_generation(
      lp, [](std::span<const double>) { return std::optional<stackel::lp::Cut>{}; }, 1e-7, 5);
  EXPECT_EQ(sol.status, LpStatus::kInfeasible);
}

TEST(LpGeneration, RejectsNonPositiveTolerance) {
  LinearProgram lp(1);
  lp.add_leq({1.0}, 1.0);
  auto none = [](std::span<const double>) { return std::optional<stackel::lp::Cut>{}; };
  EXPECT_THROW(stackel::lp::solve_with_generation(lp, none, 0.0, 5), stackel::InputError);
}

TEST(LpGeneration, DefaultRoundBound) { EXPECT_EQ(stackel::lp::default_max_rounds(3, 5), 80U); }

}  // namespace
