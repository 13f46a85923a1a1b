#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "fsdamp/adjoint.hpp"
#include "fsdamp/constraints.hpp"
#include "fsdamp/dynamics.hpp"
#include "fsdamp/lp.hpp"
#include "fsdamp/model.hpp"
#include "fsdamp/scenarios.hpp"

namespace fsdamp {

/// Linearization of one (scenario, record) constraint, kept across SLP
/// iterations: g_hat(x') = value + gradient^T (x' - point) <= 0.
struct CuttingPlane {
  Index scenario_id = 0;
  Index record_id = 0;
  Vector gradient;
  double value = 0.0;
  Vector point;
  int born = 0;
  bool active = true;
  int disabled_at = -1;

  double predict(const Vector& x) const { return value + gradient.dot(x - point); }
};

/// Exponent that starts at `start`, grows by `step` per advance, and stops at `cap`.
struct ContinuationSchedule {
  long start = 100;
  long step = 500;
  long cap = 1000000;

  long advance(long current) const { return std::min(current + step, cap); }
  void validate(bool must_be_even) const;
};

struct SlpConfig {
  explicit SlpConfig(Index n_dampers = 1, double move_limit = 0.02);

  /// 0.10 * ml * sqrt(N_d).
  static double convergence_delta(double move_limit, Index n_dampers);

  double ml = 0.02;
  double delta = 0.0;
  int i_min = 50;
  int i_max = 1000;
  ContinuationSchedule p_schedule;
  ContinuationSchedule q_schedule;
  double drop_margin = 0.02;
  double feasibility_tol = 1e-6;
  // A plane is binding when its prediction at the iterate is within this of zero.
  double binding_tol = 1e-8;
  Quadrature quadrature = Quadrature::trapezoid;

  void validate() const;
};

struct EvalTask {
  Index scenario = 0;
  Index record = 0;
};

struct EvalOutcome {
  ConstraintValue value;
  Vector gradient;  // empty unless gradients were requested
};

/// Runs primal (and optionally adjoint) analyses for batches of
/// (scenario, record) pairs, in parallel, and counts every analysis.
class ResponseEvaluator {
 public:
  ResponseEvaluator(const StructuralModel& model, const ScenarioSet& scenarios,
                    std::span<const GroundMotion> ensemble, double c_bar,
                    NewmarkParams newmark = {}, int threads = 0);

  std::vector<EvalOutcome> run(const Vector& x, std::span<const EvalTask> tasks,
                               const ConstraintParams& params, bool gradients);

  /// Time-history plus adjoint analyses performed so far.
  long evaluations() const { return evaluations_; }

  const StructuralModel& model() const { return model_; }
  const ScenarioSet& scenarios() const { return scenarios_; }
  std::span<const GroundMotion> ensemble() const { return ensemble_; }
  double c_bar() const { return c_bar_; }
  const NewmarkParams& newmark() const { return newmark_; }

 private:
  const StructuralModel& model_;
  const ScenarioSet& scenarios_;
  std::span<const GroundMotion> ensemble_;
  double c_bar_;
  NewmarkParams newmark_;
  int threads_;
  long evaluations_ = 0;
};

/// Move-limited LP of one SLP iteration: minimize cost^T x over the enabled
/// planes and the box [max(0, x - ml), min(1, x + ml)]. Planes that cannot be
/// active anywhere in the box are left out of the tableau.
LpResult solve_move_limited_lp(const Vector& cost, std::span<const CuttingPlane> planes,
                               const Vector& center, double ml, const LpOptions& options = {});

struct IterationRecord {
  int subproblem = 0;
  int iteration = 0;
  double cost = 0.0;
  double max_g = 0.0;
  double dx = 0.0;  // infinity on the first iteration
  int active_planes = 0;
  long p = 0;
  long q = 0;
};

struct SlpResult {
  Vector x;
  bool converged = false;
  int iterations = 0;
  double max_g = 0.0;                 // over the working set at x
  ConstraintParams params_used;       // exponents used to evaluate x
  long next_p = 0;                    // continuation state to hand on
  long next_q = 0;
  std::vector<IterationRecord> log;
  std::vector<CuttingPlane> planes;
  int infeasible_lps = 0;
  int dropped_planes = 0;
  // Largest true g seen on any plane at the moment it was disabled.
  double worst_g_at_drop = -INFINITY;
};

/// Solves one relaxed sub-problem over `working_set` x `records` with the
/// cutting-plane SLP method. Stops once ||x_i - x_(i-1)|| < delta after at
/// least i_min iterations with every working-set constraint satisfied to
/// `feasibility_tol`; otherwise returns the cheapest feasible iterate (or the
/// last one) at i_max with `converged == false`.
SlpResult slp_solve(ResponseEvaluator& evaluator, std::span<const Index> working_set,
                    std::span<const Index> records, const Vector& x0, const SlpConfig& config,
                    long p_start, long q_start, int subproblem = 0);

}  // namespace fsdamp
