#pragma once

#include "fsdamp/dynamics.hpp"
#include "fsdamp/linalg.hpp"
#include "fsdamp/model.hpp"

namespace fsdamp {

enum class Quadrature {
  trapezoid,       // dt/2 at both ends, dt inside
  right_rectangle  // 0 at step 0, dt elsewhere
};

/// Smoothing exponents of the drift constraint. `p` (time p-norm) must be even.
struct ConstraintParams {
  long p = 100;
  long q = 100;
  Quadrature quadrature = Quadrature::trapezoid;

  void validate() const;
};

struct ConstraintValue {
  double g = -1.0;        // aggregated constraint, feasible when <= 0
  Vector d_tilde;         // smoothed peak of each normalized drift
  double d_max_exact = 0; // sampled max over time and drifts of |d| / d_allow
};

/// Drifts divided by their allowable values, n_drifts x (N+1).
Matrix normalized_drifts(const ResponseHistory& history, const StructuralModel& model);

Vector quadrature_weights(Index n_steps, double dt, Quadrature rule);

/// Time p-norm of each normalized drift, evaluated as
/// m_j * (sum_i w_i (r_ij / m_j)^p / T)^(1/p) with m_j = max_i |r_ij|.
Vector smooth_drift_indices(const Matrix& normalized, double dt, const ConstraintParams& params);
Vector smooth_drift_indices(const ResponseHistory& history, const StructuralModel& model,
                            const ConstraintParams& params);

/// sum d^(q+1) / sum d^q - 1, evaluated with the largest entry factored out.
/// An all-zero input returns the limit value -1.
double aggregate(const Vector& d_tilde, long q);

/// Partial derivatives of `aggregate` with respect to each entry of d_tilde.
Vector aggregate_gradient(const Vector& d_tilde, long q);

double exact_peak(const ResponseHistory& history, const StructuralModel& model);

ConstraintValue evaluate_constraint(const ResponseHistory& history, const StructuralModel& model,
                                    const ConstraintParams& params);

}  // namespace fsdamp
