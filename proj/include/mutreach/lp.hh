#pragma once

#include <vector>

#include "mutreach/vec.hh"

namespace mutreach {

enum class Rel { Le, Eq, Ge };

struct LpRow {
  RatVec coeffs;
  Rel rel = Rel::Eq;
  Rational rhs = 0;
};

// maximize objective . x  subject to rows, x_j >= 0 unless free_vars[j].
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<bool> free_vars;  // empty means all non-negative
  std::vector<LpRow> rows;
  RatVec objective;             // empty means pure feasibility
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  RatVec x;         // a basic optimal (or feasible) solution
  Rational value = 0;
};

// Two-phase dense tableau simplex with Bland's rule over exact rationals.
LpResult solve_lp(const LinearProgram& lp);

struct PositiveSolution {
  bool feasible = false;
  RatVec witness;  // strictly positive when feasible
};

// Decide whether the homogeneous system  rows . f = 0  has a solution with
// every f_j > 0. By default strictness is homogenized to f_j >= 1; with
// maximize_margin the strict form is decided directly as max t with f_j >= t.
PositiveSolution rational_lp_feasible(const std::vector<RatVec>& rows, std::size_t num_vars,
                                      bool maximize_margin = false);

}  // namespace mutreach
