#pragma once

#include "fsdamp/constraints.hpp"
#include "fsdamp/dynamics.hpp"
#include "fsdamp/model.hpp"

namespace fsdamp {

/// Adjoint trajectories; column i holds the multipliers of step i.
struct AdjointState {
  Matrix lambda_u;
  Matrix lambda_v;
  Matrix lambda_a;
};

/// Chain-rule derivative of the aggregated drift constraint with respect to
/// the displacement vector of each time step. Uses the same peak-factored
/// powers as the primal evaluation, so no intermediate overflows.
class DriftSensitivity {
 public:
  DriftSensitivity(const ResponseHistory& history, const StructuralModel& model,
                   const ConstraintParams& params);

  const ConstraintValue& value() const { return value_; }

  /// dg/du_i.
  Vector dg_du(Index i) const;

  /// All steps at once, n_dof x (N+1).
  Matrix forcing() const;

 private:
  const StructuralModel& model_;
  Matrix normalized_;
  Vector weights_;
  double total_time_ = 0.0;
  double p_ = 0.0;
  ConstraintValue value_;
  Vector dg_dd_;  // dg / d d_tilde_j
};

/// Backward recursion A xi_i = b_i for i = N..1 with the 3n x 3n block matrix
/// [M 0 I; C I 0; K -g/(b dt) I -1/(b dt^2) I] factorized once.
/// `forcing` column i is dg/du_i. Column 0 of lambda_u carries the multiplier
/// of the initial equilibrium, nonzero only when v0 != 0 enters the design.
AdjointState adjoint_solve(const StructuralModel& model, const Matrix& added_damping,
                           double dt, const Matrix& forcing, const NewmarkParams& params = {});

/// grad_k = sum_i v_i^T (dC_d/dx_k) lambda_u,i.
Vector accumulate_gradient(const StructuralModel& model, double c_bar,
                           const FailureScenario& scenario, const Matrix& velocities,
                           const Matrix& lambda_u);

struct GradientResult {
  ConstraintValue value;
  Vector gradient;
};

/// Aggregated constraint and its exact discrete gradient for one
/// (design, scenario, record) triple. Runs the primal solve internally.
GradientResult adjoint_gradient(const StructuralModel& model, const DesignVector& design,
                                const FailureScenario& scenario, const GroundMotion& gm,
                                const ConstraintParams& cparams, const NewmarkParams& nparams = {});

/// Same, reusing a primal history already computed for this triple.
GradientResult adjoint_gradient(const StructuralModel& model, const DesignVector& design,
                                const FailureScenario& scenario, const ResponseHistory& history,
                                const ConstraintParams& cparams, const NewmarkParams& nparams = {});

}  // namespace fsdamp
