#include "fsdamp/adjoint.hpp"

#include <cmath>
#include <stdexcept>

namespace fsdamp {

DriftSensitivity::DriftSensitivity(const ResponseHistory& history, const StructuralModel& model,
                                   const ConstraintParams& params)
    : model_(model),
      normalized_(normalized_drifts(history, model)),
      weights_(quadrature_weights(history.n_steps(), history.dt, params.quadrature)),
      total_time_(history.dt * static_cast<double>(history.n_steps())),
      p_(static_cast<double>(params.p)) {
  value_.d_tilde = smooth_drift_indices(normalized_, history.dt, params);
  value_.g = aggregate(value_.d_tilde, params.q);
  value_.d_max_exact = normalized_.cwiseAbs().maxCoeff();
  dg_dd_ = aggregate_gradient(value_.d_tilde, params.q);
}

Vector DriftSensitivity::dg_du(Index i) const {
  // dd_j/du_i = (w_i / T) (r_ij / d_j)^(p-1) H_j / d_allow_j
  const Index nd = normalized_.rows();
  Vector per_drift = Vector::Zero(nd);
  if (weights_(i) != 0.0) {
    for (Index j = 0; j < nd; ++j) {
      const double d = value_.d_tilde(j);
      const double r = normalized_(j, i);
      if (d == 0.0 || r == 0.0) continue;
      const double ratio_pow = std::pow(std::abs(r) / d, p_ - 1.0);
      per_drift(j) = dg_dd_(j) * (weights_(i) / total_time_) * std::copysign(ratio_pow, r) /
                     model_.d_allow(j);
    }
  }
  return model_.drift_transform.transpose() * per_drift;
}

Matrix DriftSensitivity::forcing() const {
  Matrix f(model_.n_dof(), normalized_.cols());
  for (Index i = 0; i < normalized_.cols(); ++i) f.col(i) = dg_du(i);
  return f;
}

AdjointState adjoint_solve(const StructuralModel& model, const Matrix& added_damping, double dt,
                           const Matrix& forcing, const NewmarkParams& params) {
  params.validate();
  const Index n = model.n_dof();
  const Index steps = forcing.cols() - 1;
  if (forcing.rows() != n || steps < 1)
    throw std::invalid_argument("adjoint forcing has wrong dimensions");

  const double beta = params.beta;
  const double gamma = params.gamma;
  const double cv = gamma / (beta * dt);
  const double ca = 1.0 / (beta * dt * dt);
  const Matrix c = model.inherent_damping + added_damping;
  const Matrix eye = Matrix::Identity(n, n);

  Matrix a = Matrix::Zero(3 * n, 3 * n);
  a.block(0, 0, n, n) = model.mass.transpose();
  a.block(0, 2 * n, n, n) = eye;
  a.block(n, 0, n, n) = c.transpose();
  a.block(n, n, n, n) = eye;
  a.block(2 * n, 0, n, n) = model.stiffness.transpose();
  a.block(2 * n, n, n, n) = -cv * eye;
  a.block(2 * n, 2 * n, n, n) = -ca * eye;

  Eigen::PartialPivLU<Matrix> lu(a);
  if (!(lu.rcond() > 1e-14)) throw std::runtime_error("adjoint system matrix is singular");

  AdjointState s;
  s.lambda_u = Matrix::Zero(n, steps + 1);
  s.lambda_v = Matrix::Zero(n, steps + 1);
  s.lambda_a = Matrix::Zero(n, steps + 1);

  // Coefficients with which step i+1 multipliers enter step i.
  const double bu_v = dt * (1.0 - gamma / (2.0 * beta));
  const double bu_a = 1.0 / (2.0 * beta) - 1.0;
  const double bv_v = 1.0 - gamma / beta;
  const double bv_a = 1.0 / (beta * dt);

  Vector b(3 * n);
  Vector xi(3 * n);
  for (Index i = steps; i >= 1; --i) {
    if (i == steps) {
      b.setZero();
      b.segment(2 * n, n) = -forcing.col(i);
    } else {
      const auto lv = s.lambda_v.col(i + 1);
      const auto la = s.lambda_a.col(i + 1);
      b.segment(0, n) = bu_v * lv - bu_a * la;
      b.segment(n, n) = bv_v * lv - bv_a * la;
      b.segment(2 * n, n) = -cv * lv - ca * la - forcing.col(i);
    }
    xi = lu.solve(b);
    s.lambda_u.col(i) = xi.segment(0, n);
    s.lambda_v.col(i) = xi.segment(n, n);
    s.lambda_a.col(i) = xi.segment(2 * n, n);
  }
  // Initial acceleration solves M a_0 = -M e a_g0 - C v_0 - K u_0.
  const Vector rhs0 = bu_v * s.lambda_v.col(1) - bu_a * s.lambda_a.col(1);
  s.lambda_u.col(0) = model.mass.transpose().ldlt().solve(rhs0);
  return s;
}

Vector accumulate_gradient(const StructuralModel& model, double c_bar,
                           const FailureScenario& scenario, const Matrix& velocities,
                           const Matrix& lambda_u) {
  const Index nd = model.n_dampers();
  Vector grad = Vector::Zero(nd);
  for (Index k = 0; k < nd; ++k) {
    const double f = scenario.factor(k);
    if (f == 0.0) continue;
    const Matrix& t = model.damper_transforms[static_cast<std::size_t>(k)];
    const Matrix tv = t * velocities;
    const Matrix tl = t * lambda_u;
    grad(k) = f * c_bar * tv.cwiseProduct(tl).sum();
  }
  return grad;
}

GradientResult adjoint_gradient(const StructuralModel& model, const DesignVector& design,
                                const FailureScenario& scenario, const ResponseHistory& history,
                                const ConstraintParams& cparams, const NewmarkParams& nparams) {
  cparams.validate();
  const Matrix cd = assemble_added_damping(model, design, scenario);
  DriftSensitivity sens(history, model, cparams);
  const AdjointState s = adjoint_solve(model, cd, history.dt, sens.forcing(), nparams);
  return {sens.value(), accumulate_gradient(model, design.c_bar, scenario, history.v, s.lambda_u)};
}

GradientResult adjoint_gradient(const StructuralModel& model, const DesignVector& design,
                                const FailureScenario& scenario, const GroundMotion& gm,
                                const ConstraintParams& cparams, const NewmarkParams& nparams) {
  const Matrix cd = assemble_added_damping(model, design, scenario);
  const ResponseHistory h = newmark_solve(model, cd, gm, nparams);
  return adjoint_gradient(model, design, scenario, h, cparams, nparams);
}

}  // namespace fsdamp
