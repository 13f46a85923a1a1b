#include "fsdamp/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace fsdamp {

namespace {

bool is_symmetric(const Matrix& a, double rel_tol = 1e-10) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

}  // namespace

void StructuralModel::validate() const {
  const Index n = n_dof();
  require(n > 0, "model has no degrees of freedom");
  require(mass.rows() == n && mass.cols() == n, "mass must be square");
  require(stiffness.rows() == n && stiffness.cols() == n,
          "stiffness must be " + std::to_string(n) + "x" + std::to_string(n));
  require(inherent_damping.rows() == n && inherent_damping.cols() == n,
          "inherent_damping must be " + std::to_string(n) + "x" + std::to_string(n));
  require(influence.size() == n, "influence must have " + std::to_string(n) + " entries");
  require(drift_transform.cols() == n,
          "drift_transform must have " + std::to_string(n) + " columns");
  require(drift_transform.rows() > 0, "drift_transform must have at least one row");
  require(d_allow.size() == drift_transform.rows(),
          "d_allow must have one entry per drift_transform row");
  require((d_allow.array() > 0.0).all(), "every d_allow entry must be positive");
  require(is_symmetric(mass), "mass must be symmetric");
  require(is_symmetric(stiffness), "stiffness must be symmetric");
  Eigen::LLT<Matrix> llt(mass);
  require(llt.info() == Eigen::Success, "mass must be positive definite");
  for (Index i = 0; i < n_dampers(); ++i) {
    const Matrix& t = damper_transforms[static_cast<std::size_t>(i)];
    require(t.cols() == n && t.rows() > 0,
            "damper " + std::to_string(i) + " transform must have " + std::to_string(n) + " columns");
    require(t.cwiseAbs().maxCoeff() > 0.0, "damper " + std::to_string(i) + " transform is zero");
  }
}

void DesignVector::validate() const {
  require(c_bar > 0.0, "c_bar must be positive");
  require((x.array() >= 0.0).all() && (x.array() <= 1.0).all(),
          "design variables must lie in [0, 1]");
}

std::vector<Mode> compute_lowest_modes(const StructuralModel& model, Index k,
                                       const EigenOptions& options) {
  const Index n = model.n_dof();
  if (k < 0 || k > n) throw std::invalid_argument("requested more modes than degrees of freedom");
  const Matrix& m = model.mass;
  const Matrix& kk = model.stiffness;
  if (Eigen::LLT<Matrix>(m).info() != Eigen::Success)
    throw std::runtime_error("mass matrix is singular or indefinite");

  // Small negative shift keeps the factorization definite when K has rigid modes.
  const double scale = std::max(kk.trace() / m.trace(), 1e-12);
  const double shift = -1e-8 * scale;
  Eigen::LDLT<Matrix> solver(kk - shift * m);
  if (solver.info() != Eigen::Success || solver.rcond() < 1e-15)
    throw std::runtime_error("shifted stiffness matrix is singular");

  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(0.5, 1.5);

  std::vector<Mode> modes;
  modes.reserve(static_cast<std::size_t>(k));
  auto deflate = [&](Vector& y) {
    for (const Mode& found : modes) y -= found.shape * found.shape.dot(m * y);
  };

  for (Index j = 0; j < k; ++j) {
    Vector x(n);
    for (Index i = 0; i < n; ++i) x(i) = dist(rng);
    deflate(x);
    x /= std::sqrt(x.dot(m * x));

    double lambda = x.dot(kk * x);
    bool converged = false;
    for (int it = 0; it < options.max_iterations; ++it) {
      Vector y = solver.solve(m * x);
      deflate(y);
      const double norm = std::sqrt(y.dot(m * y));
      if (!(norm > 0.0)) throw std::runtime_error("inverse iteration collapsed");
      x = y / norm;
      lambda = x.dot(kk * x);
      const Vector kx = kk * x;
      const Vector mx = m * x;
      const double residual = (kx - lambda * mx).norm();
      if (residual <= options.tolerance * (kx.norm() + std::abs(lambda) * mx.norm() + 1e-300)) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw std::runtime_error("eigen-iteration did not converge for mode " + std::to_string(j + 1));
    // Fix the sign so that the largest component is positive.
    Index imax = 0;
    x.cwiseAbs().maxCoeff(&imax);
    if (x(imax) < 0.0) x = -x;
    modes.push_back(Mode{std::sqrt(std::max(lambda, 0.0)), x});
  }
  std::stable_sort(modes.begin(), modes.end(),
                   [](const Mode& a, const Mode& b) { return a.omega < b.omega; });
  return modes;
}

RayleighCoefficients rayleigh_coefficients(double zeta, double omega1, double omega2) {
  if (zeta < 0.0) throw std::invalid_argument("damping ratio must be nonnegative");
  if (!(omega1 > 0.0)) throw std::invalid_argument("first frequency must be positive");
  if (omega1 == omega2) throw std::invalid_argument("Rayleigh fit needs two distinct frequencies");
  if (omega2 < omega1) throw std::invalid_argument("Rayleigh frequencies must be ascending");
  const double sum = omega1 + omega2;
  return {2.0 * zeta * omega1 * omega2 / sum, 2.0 * zeta / sum};
}

Matrix build_rayleigh(const StructuralModel& model, double zeta, std::pair<double, double> omegas) {
  const auto c = rayleigh_coefficients(zeta, omegas.first, omegas.second);
  return c.a0 * model.mass + c.a1 * model.stiffness;
}

Matrix build_rayleigh_from_modes(const StructuralModel& model, double zeta) {
  if (model.n_dof() == 1) {
    const auto modes = compute_lowest_modes(model, 1);
    if (!(modes[0].omega > 0.0)) throw std::runtime_error("structure has a rigid-body mode");
    return (2.0 * zeta * modes[0].omega) * model.mass;
  }
  const auto modes = compute_lowest_modes(model, 2);
  return build_rayleigh(model, zeta, {modes[0].omega, modes[1].omega});
}

Matrix assemble_added_damping(const StructuralModel& model, const DesignVector& design,
                              const FailureScenario& scenario) {
  const Index n = model.n_dof();
  const Index nd = model.n_dampers();
  if (design.x.size() != nd)
    throw std::invalid_argument("design has " + std::to_string(design.x.size()) +
                                " variables but the model has " + std::to_string(nd) + " dampers");
  for (Index j : scenario.damaged)
    if (j < 0 || j >= nd) throw std::invalid_argument("scenario references a nonexistent damper");

  Matrix cd = Matrix::Zero(n, n);
  for (Index i = 0; i < nd; ++i) {
    const double c = scenario.factor(i) * design.c_bar * design.x(i);
    if (c == 0.0) continue;
    const Matrix& t = model.damper_transforms[static_cast<std::size_t>(i)];
    cd.noalias() += c * (t.transpose() * t);
  }
  return cd;
}

Matrix added_damping_derivative(const StructuralModel& model, double c_bar,
                                const FailureScenario& scenario, Index k) {
  const Matrix& t = model.damper_transforms.at(static_cast<std::size_t>(k));
  return (scenario.factor(k) * c_bar) * (t.transpose() * t);
}

}  // namespace fsdamp
