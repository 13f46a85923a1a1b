#pragma once

#include "fsdamp/linalg.hpp"

namespace fsdamp {

/// minimize cost^T x  subject to  a x <= b,  lower <= x <= upper.
/// Bounds must be finite.
struct LpProblem {
  Vector cost;
  Matrix a;
  Vector b;
  Vector lower;
  Vector upper;
};

enum class LpStatus { optimal, infeasible };

struct LpResult {
  LpStatus status = LpStatus::optimal;
  Vector x;
  double objective = 0.0;
  // Sum of row violations at x; zero for optimal results.
  double infeasibility = 0.0;
  int pivots = 0;
};

struct LpOptions {
  double optimality_tol = 1e-11;
  double pivot_tol = 1e-11;
  double feasibility_tol = 1e-9;
  int max_pivots = 100000;
};

/// Two-phase bounded-variable primal simplex on a dense tableau with Bland's
/// rule. When the rows cannot be satisfied inside the box, returns the phase-1
/// point (minimum summed violation) with status `infeasible`.
LpResult solve_lp(const LpProblem& problem, const LpOptions& options = {});

}  // namespace fsdamp
