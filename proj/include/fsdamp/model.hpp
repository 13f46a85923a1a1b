#pragma once

#include <utility>
#include <vector>

#include "fsdamp/linalg.hpp"
#include "fsdamp/scenarios.hpp"

namespace fsdamp {

/// Linear structure in kN, m, s, ton units.
///
/// `damper_transforms[i]` maps global displacements to the elongation of
/// damper i. Each is normally a single row (axial device) but any row count is
/// accepted by the assembly routines.
struct StructuralModel {
  Matrix mass;
  Matrix stiffness;
  Matrix inherent_damping;
  Vector influence;
  Matrix drift_transform;
  Vector d_allow;
  std::vector<Matrix> damper_transforms;

  Index n_dof() const { return mass.rows(); }
  Index n_drifts() const { return drift_transform.rows(); }
  Index n_dampers() const { return static_cast<Index>(damper_transforms.size()); }

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
};

/// Normalized damper sizes. Physical coefficients are `c_bar * x`.
struct DesignVector {
  Vector x;
  double c_bar = 150000.0;

  Vector coefficients() const { return c_bar * x; }
  double cost() const { return x.sum(); }
  void validate() const;
};

struct Mode {
  double omega = 0.0;  // rad/s
  Vector shape;        // mass-normalized
};

struct EigenOptions {
  int max_iterations = 20000;
  double tolerance = 1e-12;
};

/// Lowest `k` eigenpairs of K phi = w^2 M phi by inverse iteration with
/// M-orthogonal deflation against the modes already found.
std::vector<Mode> compute_lowest_modes(const StructuralModel& model, Index k,
                                       const EigenOptions& options = {});

struct RayleighCoefficients {
  double a0 = 0.0;  // mass-proportional
  double a1 = 0.0;  // stiffness-proportional
};

RayleighCoefficients rayleigh_coefficients(double zeta, double omega1, double omega2);

/// C_s = a0 M + a1 K with damping ratio `zeta` at both `omega1` and `omega2`.
Matrix build_rayleigh(const StructuralModel& model, double zeta, std::pair<double, double> omegas);

/// Fits the Rayleigh matrix to the two lowest undamped modes of the model.
Matrix build_rayleigh_from_modes(const StructuralModel& model, double zeta);

/// Added damping matrix sum_i T_i^T (f_i c_i) T_i, where f_i is the capacity
/// factor of damper i in `scenario`.
Matrix assemble_added_damping(const StructuralModel& model, const DesignVector& design,
                              const FailureScenario& scenario);

/// Derivative of the added damping matrix with respect to x_k.
Matrix added_damping_derivative(const StructuralModel& model, double c_bar,
                                const FailureScenario& scenario, Index k);

}  // namespace fsdamp
