#include "fsdamp/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fsdamp {

void GroundMotion::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("ground motion '" + name + "' needs dt > 0");
  if (accel.size() < 2)
    throw std::invalid_argument("ground motion '" + name + "' needs at least two samples");
}

void NewmarkParams::validate() const {
  const bool supported_beta = std::abs(beta - 0.25) < 1e-12 || std::abs(beta - 1.0 / 6.0) < 1e-12;
  if (!supported_beta || std::abs(gamma - 0.5) > 1e-12)
    throw std::invalid_argument("Newmark parameters must be (1/4, 1/2) or (1/6, 1/2)");
}

ResponseHistory newmark_solve(const StructuralModel& model, const Matrix& added_damping,
                              const GroundMotion& gm, const NewmarkParams& params,
                              const Vector& u0, const Vector& v0) {
  gm.validate();
  params.validate();
  const Index n = model.n_dof();
  if (added_damping.rows() != n || added_damping.cols() != n)
    throw std::invalid_argument("added damping matrix has wrong dimensions");

  const double dt = gm.dt;
  const double beta = params.beta;
  const double gamma = params.gamma;
  const Matrix& m = model.mass;
  const Matrix& k = model.stiffness;
  const Matrix c = model.inherent_damping + added_damping;
  const Vector me = m * model.influence;

  const Index steps = gm.n_steps();
  ResponseHistory h;
  h.dt = dt;
  h.u = Matrix::Zero(n, steps + 1);
  h.v = Matrix::Zero(n, steps + 1);
  h.a = Matrix::Zero(n, steps + 1);
  if (u0.size() == n) h.u.col(0) = u0;
  if (v0.size() == n) h.v.col(0) = v0;

  Eigen::LDLT<Matrix> mass_solver(m);
  h.a.col(0) = mass_solver.solve(-me * gm.at(0) - c * h.v.col(0) - k * h.u.col(0));

  // Coefficients of the displacement-form update.
  const double a1 = 1.0 / (beta * dt * dt);
  const double a2 = 1.0 / (beta * dt);
  const double a3 = 1.0 / (2.0 * beta) - 1.0;
  const double b1 = gamma / (beta * dt);
  const double b2 = 1.0 - gamma / beta;
  const double b3 = dt * (1.0 - gamma / (2.0 * beta));

  const Matrix k_eff = k + b1 * c + a1 * m;
  Eigen::LDLT<Matrix> solver(k_eff);
  if (solver.info() != Eigen::Success || !(solver.rcond() > 1e-14))
    throw std::runtime_error("effective stiffness matrix is singular");

  Vector rhs(n);
  for (Index i = 0; i < steps; ++i) {
    const auto ui = h.u.col(i);
    const auto vi = h.v.col(i);
    const auto ai = h.a.col(i);
    rhs.noalias() = -me * gm.at(i + 1);
    rhs.noalias() += m * (a1 * ui + a2 * vi + a3 * ai);
    rhs.noalias() += c * (b1 * ui - b2 * vi - b3 * ai);
    h.u.col(i + 1) = solver.solve(rhs);
    const auto du = h.u.col(i + 1) - ui;
    h.a.col(i + 1) = a1 * du - a2 * vi - a3 * ai;
    h.v.col(i + 1) = b1 * du + b2 * vi + b3 * ai;
  }
  return h;
}

double max_equilibrium_residual(const StructuralModel& model, const Matrix& added_damping,
                                const GroundMotion& gm, const ResponseHistory& history) {
  const Matrix c = model.inherent_damping + added_damping;
  const Vector me = model.mass * model.influence;
  double worst = 0.0;
  for (Index i = 0; i <= history.n_steps(); ++i) {
    const Vector inertia = model.mass * history.a.col(i);
    const Vector damping = c * history.v.col(i);
    const Vector elastic = model.stiffness * history.u.col(i);
    const Vector load = -me * gm.at(i);
    const double scale = inertia.norm() + damping.norm() + elastic.norm() + load.norm();
    if (scale == 0.0) continue;
    worst = std::max(worst, (inertia + damping + elastic - load).norm() / scale);
  }
  return worst;
}

double spectral_displacement(const GroundMotion& gm, double period, double zeta) {
  if (!(period > 0.0)) throw std::invalid_argument("period must be positive");
  const double omega = 2.0 * std::numbers::pi / period;
  StructuralModel sdof;
  sdof.mass = Matrix::Identity(1, 1);
  sdof.stiffness = Matrix::Constant(1, 1, omega * omega);
  sdof.inherent_damping = Matrix::Constant(1, 1, 2.0 * zeta * omega);
  sdof.influence = Vector::Ones(1);
  sdof.drift_transform = Matrix::Identity(1, 1);
  sdof.d_allow = Vector::Ones(1);
  const auto h = newmark_solve(sdof, Matrix::Zero(1, 1), gm);
  return h.u.cwiseAbs().maxCoeff();
}

Index select_dominant_record(std::span<const GroundMotion> records, double period, double zeta) {
  if (records.empty()) throw std::invalid_argument("ground-motion ensemble is empty");
  Index best = 0;
  double best_sd = -1.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const double sd = spectral_displacement(records[i], period, zeta);
    if (sd > best_sd) {
      best_sd = sd;
      best = static_cast<Index>(i);
    }
  }
  return best;
}

}  // namespace fsdamp
