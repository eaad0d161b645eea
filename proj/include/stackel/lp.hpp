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

// Dense two-phase primal simplex with Bland's rule, plus a cutting-plane
// driver that grows the constraint set from a separation oracle.
//
// The solver is templated on the scalar type. `double` is what the game
// solvers use; an exact rational type (e.g. boost::multiprecision
// cpp_rational) works unchanged and gives exact, tolerance-free pivots.

#ifndef STACKEL_LP_HPP_
#define STACKEL_LP_HPP_

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stackel/errors.hpp"

namespace stackel::lp {

template <class Scalar>
struct ScalarTraits {
  static Scalar pivot_eps() { return Scalar(0); }
  static Scalar feasibility_eps() { return Scalar(0); }
  static void clean(Scalar&) {}
};

template <std::floating_point F>
struct ScalarTraits<F> {
  static F pivot_eps() { return F(1e-10); }
  static F feasibility_eps() { return F(1e-9); }
  static void clean(F& v) {
    if (std::abs(v) < F(1e-13)) v = F(0);
  }
};

template <class Scalar>
Scalar scalar_abs(const Scalar& v) {
  return v < Scalar(0) ? Scalar(-v) : v;
}

template <class Scalar>
struct BasicRow {
  std::vector<Scalar> coeffs;
  Scalar rhs{};
};

// max objective . x
// s.t. every leq row: coeffs . x <= rhs
//      every eq row:  coeffs . x == rhs
//      lowerBounds[k] <= x_k <= upperBounds[k] (absent bound = unbounded)
//
// A freshly constructed program has x >= 0 and no upper bounds.
template <class Scalar>
struct BasicLinearProgram {
  std::size_t numVars = 0;
  std::vector<Scalar> objective;
  std::vector<BasicRow<Scalar>> leqRows;
  std::vector<BasicRow<Scalar>> eqRows;
  std::vector<std::optional<Scalar>> lowerBounds;
  std::vector<std::optional<Scalar>> upperBounds;

  BasicLinearProgram() = default;
  explicit BasicLinearProgram(std::size_t n)
      : numVars(n),
        objective(n, Scalar(0)),
        lowerBounds(n, Scalar(0)),
        upperBounds(n, std::nullopt) {}

  void add_leq(std::vector<Scalar> coeffs, Scalar rhs) {
    leqRows.push_back({std::move(coeffs), std::move(rhs)});
  }
  void add_eq(std::vector<Scalar> coeffs, Scalar rhs) {
    eqRows.push_back({std::move(coeffs), std::move(rhs)});
  }

  void validate() const {
    if (objective.size() != numVars || lowerBounds.size() != numVars ||
        upperBounds.size() != numVars) {
      throw InputError("linear program: objective/bounds length != numVars");
    }
    auto check_rows = [&](const auto& rows, const char* kind) {
      for (const auto& row : rows) {
        if (row.coeffs.size() != numVars) {
          throw InputError(std::string("linear program: ") + kind +
                           " row has wrong length");
        }
      }
    };
    check_rows(leqRows, "leq");
    check_rows(eqRows, "eq");
    for (std::size_t k = 0; k < numVars; ++k) {
      if (lowerBounds[k] && upperBounds[k] && *upperBounds[k] < *lowerBounds[k]) {
        throw InputError("linear program: lower bound exceeds upper bound");
      }
    }
  }
};

enum class LpStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  // The pivot guard tripped or the float solution failed its re-check.
  kNumericalFailure,
  // Constraint generation ran out of rounds; values hold the last iterate.
  kRoundLimit,
};

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kNumericalFailure: return "numerical_failure";
    case LpStatus::kRoundLimit: return "round_limit";
  }
  return "unknown";
}

template <class Scalar>
struct BasicLpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Scalar> values;
  Scalar objectiveValue{};
  std::size_t pivots = 0;
  // Number of LPs solved by solve_with_generation (1 for a plain solve).
  std::size_t rounds = 1;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

// A violated <= constraint reported by a separation oracle.
template <class Scalar>
struct BasicCut {
  std::vector<Scalar> coeffs;
  Scalar rhs{};
  Scalar violation{};
};

using LinearProgram = BasicLinearProgram<double>;
using LpSolution = BasicLpSolution<double>;
using Cut = BasicCut<double>;
using SeparationOracle =
    std::function<std::optional<Cut>(std::span<const double>)>;

// Largest amount by which `values` violates any row or bound of `lp`.
template <class Scalar>
Scalar max_violation(const BasicLinearProgram<Scalar>& lp,
                     std::span<const Scalar> values) {
  Scalar worst(0);
  auto dot = [&](const std::vector<Scalar>& a) {
    Scalar s(0);
    for (std::size_t k = 0; k < lp.numVars; ++k) s += a[k] * values[k];
    return s;
  };
  for (const auto& row : lp.leqRows) worst = std::max(worst, Scalar(dot(row.coeffs) - row.rhs));
  for (const auto& row : lp.eqRows) worst = std::max(worst, scalar_abs(Scalar(dot(row.coeffs) - row.rhs)));
  for (std::size_t k = 0; k < lp.numVars; ++k) {
    if (lp.lowerBounds[k]) worst = std::max(worst, Scalar(*lp.lowerBounds[k] - values[k]));
    if (lp.upperBounds[k]) worst = std::max(worst, Scalar(values[k] - *lp.upperBounds[k]));
  }
  return worst;
}

namespace detail {

template <class Scalar>
class TwoPhaseSimplex {
 public:
  explicit TwoPhaseSimplex(const BasicLinearProgram<Scalar>& lp) : lp_(lp) {}

  BasicLpSolution<Scalar> run() {
    using Traits = ScalarTraits<Scalar>;
    BasicLpSolution<Scalar> out;
    build();

    // Phase 1: maximize -(sum of artificials).
    std::fill(obj_.begin(), obj_.end(), Scalar(0));
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (basis_[i] < artStart_) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (j < artStart_ || j == cols_) obj_[j] += t_[i][j];
      }
    }
    if (!iterate(cols_, out.pivots)) {
      // Phase 1 is bounded by construction; hitting this means the guard.
      out.status = guardTripped_ ? LpStatus::kNumericalFailure : LpStatus::kInfeasible;
      return out;
    }
    Scalar scale(1);
    for (const auto& row : t_) scale = std::max(scale, scalar_abs(row[cols_]));
    if (obj_[cols_] > Traits::feasibility_eps() * scale) {
      out.status = LpStatus::kInfeasible;
      return out;
    }
    drive_out_artificials(out.pivots);

    // Phase 2.
    for (std::size_t j = 0; j <= cols_; ++j) {
      obj_[j] = j < numY_ ? cost_[j] : Scalar(0);
    }
    for (std::size_t i = 0; i < t_.size(); ++i) {
      const std::size_t b = basis_[i];
      if (b >= numY_ || cost_[b] == Scalar(0)) continue;
      const Scalar cb = cost_[b];
      for (std::size_t j = 0; j <= cols_; ++j) obj_[j] -= cb * t_[i][j];
    }
    if (!iterate(artStart_, out.pivots)) {
      out.status = guardTripped_ ? LpStatus::kNumericalFailure : LpStatus::kUnbounded;
      return out;
    }

    std::vector<Scalar> y(cols_, Scalar(0));
    for (std::size_t i = 0; i < t_.size(); ++i) y[basis_[i]] = t_[i][cols_];
    out.values.assign(lp_.numVars, Scalar(0));
    for (std::size_t k = 0; k < lp_.numVars; ++k) {
      Scalar v = varMap_[k].offset;
      for (const auto& [col, sign] : varMap_[k].cols) {
        v += sign > 0 ? y[col] : Scalar(-y[col]);
      }
      out.values[k] = v;
    }
    out.objectiveValue = Scalar(0);
    for (std::size_t k = 0; k < lp_.numVars; ++k) {
      out.objectiveValue += lp_.objective[k] * out.values[k];
    }
    out.status = LpStatus::kOptimal;
    if constexpr (std::floating_point<Scalar>) {
      Scalar rowScale(1);
      for (const auto& row : rows_) rowScale = std::max(rowScale, scalar_abs(row.b));
      if (max_violation<Scalar>(lp_, out.values) > Scalar(1e-7) * rowScale) {
        out.status = LpStatus::kNumericalFailure;
      }
    }
    return out;
  }

 private:
  struct VarMap {
    Scalar offset{};
    std::vector<std::pair<std::size_t, int>> cols;
  };
  struct Constraint {
    std::vector<Scalar> a;
    Scalar b{};
    bool equality = false;
  };

  void build() {
    const std::size_t n = lp_.numVars;
    varMap_.assign(n, VarMap{});
    std::vector<std::pair<std::size_t, Scalar>> boundRows;  // y_col <= width
    numY_ = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto& lo = lp_.lowerBounds[k];
      const auto& hi = lp_.upperBounds[k];
      if (lo) {
        varMap_[k].offset = *lo;
        varMap_[k].cols.push_back({numY_, +1});
        if (hi) boundRows.emplace_back(numY_, Scalar(*hi - *lo));
        ++numY_;
      } else if (hi) {
        varMap_[k].offset = *hi;
        varMap_[k].cols.push_back({numY_++, -1});
      } else {
        varMap_[k].offset = Scalar(0);
        varMap_[k].cols.push_back({numY_++, +1});
        varMap_[k].cols.push_back({numY_++, -1});
      }
    }

    auto transform = [&](const BasicRow<Scalar>& row, bool eq) {
      Constraint c;
      c.a.assign(numY_, Scalar(0));
      c.b = row.rhs;
      c.equality = eq;
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& coef = row.coeffs[k];
        if (coef == Scalar(0)) continue;
        c.b -= coef * varMap_[k].offset;
        for (const auto& [col, sign] : varMap_[k].cols) {
          c.a[col] += sign > 0 ? coef : Scalar(-coef);
        }
      }
      return c;
    };
    rows_.clear();
    for (const auto& row : lp_.leqRows) rows_.push_back(transform(row, false));
    for (const auto& row : lp_.eqRows) rows_.push_back(transform(row, true));
    for (const auto& [col, width] : boundRows) {
      Constraint c;
      c.a.assign(numY_, Scalar(0));
      c.a[col] = Scalar(1);
      c.b = width;
      rows_.push_back(std::move(c));
    }

    cost_.assign(numY_, Scalar(0));
    for (std::size_t k = 0; k < n; ++k) {
      for (const auto& [col, sign] : varMap_[k].cols) {
        cost_[col] += sign > 0 ? lp_.objective[k] : Scalar(-lp_.objective[k]);
      }
    }

    std::size_t numSlack = 0;
    std::size_t numArt = 0;
    for (const auto& c : rows_) {
      if (!c.equality) ++numSlack;
      if (c.equality || c.b < Scalar(0)) ++numArt;
    }
    artStart_ = numY_ + numSlack;
    cols_ = artStart_ + numArt;

    t_.assign(rows_.size(), std::vector<Scalar>(cols_ + 1, Scalar(0)));
    basis_.assign(rows_.size(), 0);
    obj_.assign(cols_ + 1, Scalar(0));
    std::size_t slack = numY_;
    std::size_t art = artStart_;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Constraint& c = rows_[i];
      const bool flip = c.b < Scalar(0);
      auto& row = t_[i];
      for (std::size_t j = 0; j < numY_; ++j) row[j] = flip ? Scalar(-c.a[j]) : c.a[j];
      row[cols_] = flip ? Scalar(-c.b) : c.b;
      if (!c.equality) {
        row[slack] = flip ? Scalar(-1) : Scalar(1);
        if (!flip) basis_[i] = slack;
        ++slack;
      }
      if (c.equality || flip) {
        row[art] = Scalar(1);
        basis_[i] = art++;
      }
    }
  }

  void pivot(std::size_t r, std::size_t s) {
    using Traits = ScalarTraits<Scalar>;
    auto& pr = t_[r];
    const Scalar p = pr[s];
    for (auto& v : pr) v /= p;
    pr[s] = Scalar(1);
    auto eliminate = [&](std::vector<Scalar>& row) {
      const Scalar f = row[s];
      if (f == Scalar(0)) return;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (pr[j] == Scalar(0)) continue;
        row[j] -= f * pr[j];
        Traits::clean(row[j]);
      }
      row[s] = Scalar(0);
    };
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i != r) eliminate(t_[i]);
    }
    eliminate(obj_);
    basis_[r] = s;
  }

  // Bland's rule on columns [0, colLimit). Returns false when unbounded or
  // when the pivot guard trips (guardTripped_ set).
  bool iterate(std::size_t colLimit, std::size_t& pivots) {
    using Traits = ScalarTraits<Scalar>;
    const Scalar eps = Traits::pivot_eps();
    const std::size_t guard = 1000 + 50 * (t_.size() + cols_);
    for (std::size_t steps = 0;; ++steps) {
      if (steps > guard) {
        guardTripped_ = true;
        return false;
      }
      std::size_t enter = colLimit;
      for (std::size_t j = 0; j < colLimit; ++j) {
        if (obj_[j] > eps) {
          enter = j;
          break;
        }
      }
      if (enter == colLimit) return true;
      std::size_t leave = t_.size();
      Scalar best{};
      for (std::size_t i = 0; i < t_.size(); ++i) {
        const Scalar a = t_[i][enter];
        if (!(a > eps)) continue;
        const Scalar ratio = t_[i][cols_] / a;
        if (leave == t_.size() || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == t_.size()) return false;
      pivot(leave, enter);
      ++pivots;
    }
  }

  void drive_out_artificials(std::size_t& pivots) {
    const Scalar eps = ScalarTraits<Scalar>::pivot_eps();
    std::vector<bool> drop(t_.size(), false);
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (basis_[i] < artStart_) continue;
      std::size_t col = artStart_;
      for (std::size_t j = 0; j < artStart_; ++j) {
        if (scalar_abs(t_[i][j]) > eps) {
          col = j;
          break;
        }
      }
      if (col == artStart_) {
        drop[i] = true;  // redundant equality
      } else {
        pivot(i, col);
        ++pivots;
      }
    }
    std::size_t w = 0;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (drop[i]) continue;
      if (w != i) {
        t_[w] = std::move(t_[i]);
        basis_[w] = basis_[i];
      }
      ++w;
    }
    t_.resize(w);
    basis_.resize(w);
  }

  const BasicLinearProgram<Scalar>& lp_;
  std::vector<VarMap> varMap_;
  std::vector<Constraint> rows_;
  std::vector<Scalar> cost_;
  std::vector<std::vector<Scalar>> t_;
  std::vector<Scalar> obj_;
  std::vector<std::size_t> basis_;
  std::size_t numY_ = 0;
  std::size_t artStart_ = 0;
  std::size_t cols_ = 0;
  bool guardTripped_ = false;
};

}  // namespace detail

// Solves `lp` exactly (up to the scalar type's arithmetic). Deterministic.
template <class Scalar>
BasicLpSolution<Scalar> solve(const BasicLinearProgram<Scalar>& lp) {
  lp.validate();
  return detail::TwoPhaseSimplex<Scalar>(lp).run();
}

inline std::size_t default_max_rounds(std::size_t numVars,
                                      std::size_t familySizeBound) {
  return 10 * (numVars + familySizeBound);
}

// Cutting-plane loop: solve, ask the oracle for a violated constraint at the
// optimum, add it, repeat. Stops when the oracle has nothing violated by more
// than `tol`. Non-optimal statuses of an intermediate LP are returned as-is.
//
// Oracle: callable (std::span<const Scalar>) -> std::optional<BasicCut<Scalar>>.
template <class Scalar, class Oracle>
BasicLpSolution<Scalar> solve_with_generation(BasicLinearProgram<Scalar> lp,
                                              Oracle&& oracle, Scalar tol,
                                              std::size_t maxRounds) {
  if (!(tol > Scalar(0))) throw InputError("solve_with_generation: tol must be > 0");
  lp.validate();
  BasicLpSolution<Scalar> sol;
  std::size_t pivots = 0;
  for (std::size_t round = 1; round <= maxRounds; ++round) {
    sol = solve(lp);
    pivots += sol.pivots;
    sol.pivots = pivots;
    sol.rounds = round;
    if (!sol.optimal()) return sol;
    std::optional<BasicCut<Scalar>> cut =
        oracle(std::span<const Scalar>(sol.values.data(), sol.values.size()));
    if (!cut || !(cut->violation > tol)) return sol;
    if (cut->coeffs.size() != lp.numVars) {
      throw InputError("separation oracle returned a cut of the wrong length");
    }
    lp.add_leq(std::move(cut->coeffs), std::move(cut->rhs));
  }
  sol.status = LpStatus::kRoundLimit;
  return sol;
}

}  // namespace stackel::lp

#endif  // STACKEL_LP_HPP_
