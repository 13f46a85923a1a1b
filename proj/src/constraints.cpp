#include "fsdamp/constraints.hpp"

#include <cmath>
#include <stdexcept>

namespace fsdamp {

void ConstraintParams::validate() const {
  if (p < 2 || p % 2 != 0) throw std::invalid_argument("p must be an even integer >= 2");
  if (q < 1) throw std::invalid_argument("q must be an integer >= 1");
}

Matrix normalized_drifts(const ResponseHistory& history, const StructuralModel& model) {
  if (history.u.rows() != model.n_dof())
    throw std::invalid_argument("response history does not match the model size");
  Matrix r = model.drift_transform * history.u;
  r.array().colwise() /= model.d_allow.array();
  return r;
}

Vector quadrature_weights(Index n_steps, double dt, Quadrature rule) {
  Vector w = Vector::Constant(n_steps + 1, dt);
  if (rule == Quadrature::trapezoid) {
    w(0) = 0.5 * dt;
    w(n_steps) = 0.5 * dt;
  } else {
    w(0) = 0.0;
  }
  return w;
}

Vector smooth_drift_indices(const Matrix& normalized, double dt, const ConstraintParams& params) {
  params.validate();
  const Index steps = normalized.cols() - 1;
  if (steps < 1) throw std::invalid_argument("drift history needs at least one time step");
  const Vector w = quadrature_weights(steps, dt, params.quadrature);
  const double total = dt * static_cast<double>(steps);
  const double p = static_cast<double>(params.p);

  Vector d(normalized.rows());
  for (Index j = 0; j < normalized.rows(); ++j) {
    const auto row = normalized.row(j);
    const double peak = row.cwiseAbs().maxCoeff();
    if (peak == 0.0) {
      d(j) = 0.0;
      continue;
    }
    double sum = 0.0;
    for (Index i = 0; i <= steps; ++i) {
      if (w(i) == 0.0) continue;
      sum += w(i) * std::pow(std::abs(row(i)) / peak, p);
    }
    if (sum > 0.0) {
      d(j) = peak * std::pow(sum / total, 1.0 / p);
    } else {
      // Every weighted sample underflowed: only a zero-weight sample reaches the peak.
      double log_sum = -INFINITY;
      for (Index i = 0; i <= steps; ++i) {
        if (w(i) == 0.0 || row(i) == 0.0) continue;
        const double term = std::log(w(i)) + p * std::log(std::abs(row(i)) / peak);
        log_sum = std::max(log_sum, term) + std::log1p(std::exp(-std::abs(log_sum - term)));
      }
      d(j) = std::isfinite(log_sum) ? peak * std::exp((log_sum - std::log(total)) / p) : 0.0;
    }
  }
  return d;
}

Vector smooth_drift_indices(const ResponseHistory& history, const StructuralModel& model,
                            const ConstraintParams& params) {
  return smooth_drift_indices(normalized_drifts(history, model), history.dt, params);
}

double aggregate(const Vector& d_tilde, long q) {
  if (q < 1) throw std::invalid_argument("q must be an integer >= 1");
  const double peak = d_tilde.maxCoeff();
  if (!(peak > 0.0)) return -1.0;
  const double qd = static_cast<double>(q);
  double num = 0.0;
  double den = 0.0;
  for (Index j = 0; j < d_tilde.size(); ++j) {
    const double s = d_tilde(j) / peak;
    const double sq = std::pow(s, qd);
    den += sq;
    num += sq * s;
  }
  return peak * num / den - 1.0;
}

Vector aggregate_gradient(const Vector& d_tilde, long q) {
  Vector grad = Vector::Zero(d_tilde.size());
  const double peak = d_tilde.maxCoeff();
  if (!(peak > 0.0)) return grad;
  const double qd = static_cast<double>(q);
  // With s = d / peak the powers of peak cancel:
  // dg/dd_j = ((q+1) s_j^q S_q - q s_j^(q-1) S_(q+1)) / S_q^2
  Vector s = d_tilde / peak;
  double sq_sum = 0.0;
  double sq1_sum = 0.0;
  for (Index j = 0; j < s.size(); ++j) {
    const double sq = std::pow(s(j), qd);
    sq_sum += sq;
    sq1_sum += sq * s(j);
  }
  for (Index j = 0; j < s.size(); ++j) {
    const double sqm1 = std::pow(s(j), qd - 1.0);
    grad(j) = ((qd + 1.0) * sqm1 * s(j) * sq_sum - qd * sqm1 * sq1_sum) / (sq_sum * sq_sum);
  }
  return grad;
}

double exact_peak(const ResponseHistory& history, const StructuralModel& model) {
  return normalized_drifts(history, model).cwiseAbs().maxCoeff();
}

ConstraintValue evaluate_constraint(const ResponseHistory& history, const StructuralModel& model,
                                    const ConstraintParams& params) {
  const Matrix r = normalized_drifts(history, model);
  ConstraintValue value;
  value.d_tilde = smooth_drift_indices(r, history.dt, params);
  value.g = aggregate(value.d_tilde, params.q);
  value.d_max_exact = r.cwiseAbs().maxCoeff();
  return value;
}

}  // namespace fsdamp
