#pragma once

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "fsdamp/adjoint.hpp"
#include "fsdamp/lp.hpp"
#include "fsdamp/synthetic.hpp"

namespace fsdamp::testing {

inline StructuralModel two_dof_model() {
  return make_shear_frame({{10.0, 8.0}, {4000.0, 3000.0}, 0.05, 0.01});
}

// Short, deterministic, non-smooth enough that both drifts peak at different steps.
inline GroundMotion short_record(Index steps = 50, double dt = 0.02) {
  GroundMotion gm;
  gm.name = "short";
  gm.dt = dt;
  gm.accel.resize(steps + 1);
  for (Index i = 0; i <= steps; ++i) {
    const double t = dt * static_cast<double>(i);
    gm.accel(i) = 3.0 * std::sin(9.0 * t) * std::exp(-0.5 * t) + 1.5 * std::sin(23.0 * t + 0.4);
  }
  return gm;
}

inline GroundMotion zero_record(Index steps = 100, double dt = 0.01) {
  GroundMotion gm;
  gm.name = "zero";
  gm.dt = dt;
  gm.accel = Vector::Zero(steps + 1);
  return gm;
}

inline double constraint_at(const StructuralModel& model, const DesignVector& design,
                            const FailureScenario& scenario, const GroundMotion& gm,
                            const ConstraintParams& params) {
  const auto h = newmark_solve(model, assemble_added_damping(model, design, scenario), gm);
  return evaluate_constraint(h, model, params).g;
}

// Central differences on the primal constraint only.
inline Vector fd_gradient(const StructuralModel& model, const DesignVector& design,
                          const FailureScenario& scenario, const GroundMotion& gm,
                          const ConstraintParams& params, double h) {
  Vector g(design.x.size());
  for (Index k = 0; k < design.x.size(); ++k) {
    DesignVector plus = design, minus = design;
    plus.x(k) += h;
    minus.x(k) -= h;
    g(k) = (constraint_at(model, plus, scenario, gm, params) -
            constraint_at(model, minus, scenario, gm, params)) /
           (2.0 * h);
  }
  return g;
}

// Richardson-extrapolated central difference, O(h^4).
inline Vector fd_gradient_richardson(const StructuralModel& model, const DesignVector& design,
                                     const FailureScenario& scenario, const GroundMotion& gm,
                                     const ConstraintParams& params, double h) {
  const Vector a = fd_gradient(model, design, scenario, gm, params, h);
  const Vector b = fd_gradient(model, design, scenario, gm, params, h / 2.0);
  return (4.0 * b - a) / 3.0;
}

// Minimum of cost^T x over every vertex of {a x <= b, lower <= x <= upper}.
// Returns +inf when no vertex is feasible.
inline double vertex_enumeration_min(const LpProblem& lp, double tol = 1e-9) {
  const Index n = lp.cost.size();
  const Index m = lp.a.rows();
  // Every constraint as a row g^T x <= h.
  Matrix rows(m + 2 * n, n);
  Vector rhs(m + 2 * n);
  rows.topRows(m) = lp.a;
  rhs.head(m) = lp.b;
  for (Index i = 0; i < n; ++i) {
    rows.row(m + 2 * i) = -Matrix::Identity(n, n).row(i);
    rhs(m + 2 * i) = -lp.lower(i);
    rows.row(m + 2 * i + 1) = Matrix::Identity(n, n).row(i);
    rhs(m + 2 * i + 1) = lp.upper(i);
  }
  const Index total = rows.rows();
  double best = std::numeric_limits<double>::infinity();
  std::vector<Index> pick(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) pick[static_cast<std::size_t>(i)] = i;
  while (true) {
    Matrix sub(n, n);
    Vector sr(n);
    for (Index i = 0; i < n; ++i) {
      sub.row(i) = rows.row(pick[static_cast<std::size_t>(i)]);
      sr(i) = rhs(pick[static_cast<std::size_t>(i)]);
    }
    Eigen::FullPivLU<Matrix> lu(sub);
    if (lu.isInvertible()) {
      const Vector x = lu.solve(sr);
      if (((rows * x - rhs).array() <= tol).all()) best = std::min(best, lp.cost.dot(x));
    }
    Index i = n - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == total - n + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < n; ++j)
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return best;
}

// Random bounded LP with a known interior-ish feasible point.
inline LpProblem random_lp(std::mt19937& rng) {
  std::uniform_int_distribution<int> nvar(3, 6), nrow(1, 6);
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.0, 1.0);
  const Index n = nvar(rng);
  const Index m = nrow(rng);
  LpProblem lp;
  lp.cost.resize(n);
  lp.lower.resize(n);
  lp.upper.resize(n);
  Vector xf(n);
  for (Index i = 0; i < n; ++i) {
    lp.cost(i) = u(rng);
    lp.lower(i) = 0.5 * u(rng);
    lp.upper(i) = lp.lower(i) + 0.1 + pos(rng);
    xf(i) = lp.lower(i) + pos(rng) * (lp.upper(i) - lp.lower(i));
  }
  lp.a.resize(m, n);
  lp.b.resize(m);
  for (Index r = 0; r < m; ++r) {
    for (Index i = 0; i < n; ++i) lp.a(r, i) = u(rng);
    lp.b(r) = lp.a.row(r).dot(xf) + 0.3 * pos(rng);
  }
  return lp;
}


// Four-story frame with one damper per story, sized so that the intact-only
// design is violated when a damper fails while a fail-safe design exists.
inline constexpr double kFrameCbar = 3000.0;

inline StructuralModel four_story_frame(double d_allow = 0.022) {
  return make_shear_frame({{100.0, 100.0, 100.0, 80.0}, {60000.0, 55000.0, 45000.0, 35000.0}, 0.05, d_allow});
}

inline std::vector<GroundMotion> frame_records(int count = 2, double duration = 10.0) {
  std::vector<GroundMotion> out;
  for (int s = 1; s <= count; ++s) {
    SyntheticRecordSpec spec;
    spec.name = "r" + std::to_string(s);
    spec.seed = static_cast<std::uint32_t>(s);
    spec.duration = duration;
    spec.decay_start = 0.6 * duration;
    spec.pga = 3.0;
    out.push_back(make_synthetic_record(spec));
  }
  return out;
}

}  // namespace fsdamp::testing
