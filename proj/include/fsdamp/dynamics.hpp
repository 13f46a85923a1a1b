#pragma once

#include <span>
#include <string>
#include <vector>

#include "fsdamp/linalg.hpp"
#include "fsdamp/model.hpp"

namespace fsdamp {

/// Uniformly sampled ground acceleration in m/s^2. Sample i is at t = i * dt.
struct GroundMotion {
  std::string name;
  double dt = 0.0;
  Vector accel;
  double scale = 1.0;

  Index n_steps() const { return accel.size() - 1; }
  double duration() const { return dt * static_cast<double>(n_steps()); }
  double at(Index i) const { return scale * accel(i); }
  void validate() const;
};

/// Relative displacement, velocity and acceleration histories.
/// Column i of each matrix is the state at step i (n_dof x (N+1)).
struct ResponseHistory {
  Matrix u;
  Matrix v;
  Matrix a;
  double dt = 0.0;

  Index n_steps() const { return u.cols() - 1; }
};

struct NewmarkParams {
  double beta = 0.25;
  double gamma = 0.5;

  static NewmarkParams average_acceleration() { return {0.25, 0.5}; }
  static NewmarkParams linear_acceleration() { return {1.0 / 6.0, 0.5}; }
  void validate() const;
};

/// Integrates M a + (C_s + C_d) v + K u = -M e a_g. The effective stiffness is
/// factorized once and reused at every step. `u0`/`v0` default to zero.
ResponseHistory newmark_solve(const StructuralModel& model, const Matrix& added_damping,
                              const GroundMotion& gm, const NewmarkParams& params = {},
                              const Vector& u0 = Vector(), const Vector& v0 = Vector());

/// Largest equilibrium residual over all steps, each relative to the norm of
/// that step's force terms.
double max_equilibrium_residual(const StructuralModel& model, const Matrix& added_damping,
                                const GroundMotion& gm, const ResponseHistory& history);

/// Peak |u| of a unit-mass oscillator with period `period` and damping ratio
/// `zeta` driven by `gm`.
double spectral_displacement(const GroundMotion& gm, double period, double zeta);

/// Index of the record with the largest spectral displacement at `period`.
Index select_dominant_record(std::span<const GroundMotion> records, double period, double zeta);

}  // namespace fsdamp
