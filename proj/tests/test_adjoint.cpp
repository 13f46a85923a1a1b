#include "doctest.h"
#include "support.hpp"

using namespace fsdamp;
using namespace fsdamp::testing;

namespace {

double relative_error(const Vector& a, const Vector& b) {
  return (a - b).lpNorm<Eigen::Infinity>() / b.lpNorm<Eigen::Infinity>();
}

ScenarioSet two_damper_scenarios() { return enumerate_scenarios(2, 1, 1, 0.5); }

}  // namespace

TEST_CASE("adjoint gradient matches central differences") {
  const StructuralModel model = two_dof_model();
  const GroundMotion gm = short_record(50);
  const ScenarioSet set = two_damper_scenarios();
  // ids: 0 none, 1-2 complete, 3-4 partial
  const DesignVector design{(Vector(2) << 0.35, 0.6).finished(), 40.0};

  struct Case {
    long pq;
    double tol;
  };
  for (const Case c : {Case{8, 1e-6}, Case{100, 1e-3}}) {
    const ConstraintParams params{c.pq, c.pq};
    for (Index s : {Index{0}, Index{1}, Index{3}}) {
      CAPTURE(c.pq);
      CAPTURE(s);
      const GradientResult r = adjoint_gradient(model, design, set[s], gm, params);
      const Vector fd = fd_gradient_richardson(model, design, set[s], gm, params, 1e-4);
      const double g_fd = constraint_at(model, design, set[s], gm, params);
      CHECK(r.value.g == doctest::Approx(g_fd).epsilon(1e-13));
      if (s == 1) CHECK(r.gradient(0) == 0.0);
      else CHECK(relative_error(r.gradient, fd) <= c.tol);
      if (s == 1) CHECK(std::abs(r.gradient(1) - fd(1)) / std::abs(fd(1)) <= c.tol);
    }
  }
}

TEST_CASE("failed damper has zero sensitivity and partial failure scales it") {
  const StructuralModel model = two_dof_model();
  const GroundMotion gm = short_record(50);
  const ScenarioSet set = two_damper_scenarios();
  const DesignVector design{(Vector(2) << 0.5, 0.5).finished(), 40.0};
  const ConstraintParams params{8, 8};
  const GradientResult complete = adjoint_gradient(model, design, set[1], gm, params);
  CHECK(complete.gradient(0) == 0.0);

  // With damper 1 at nu = 0.5, doubling its design gives the no-failure
  // structure, whose sensitivity to c_1 is half as large per unit x.
  const DesignVector doubled{(Vector(2) << 1.0, 0.5).finished(), 40.0};
  const GradientResult partial = adjoint_gradient(model, doubled, set[3], gm, params);
  const GradientResult intact = adjoint_gradient(model, design, set[0], gm, params);
  CHECK(partial.value.g == doctest::Approx(intact.value.g).epsilon(1e-12));
  CHECK(partial.gradient(0) == doctest::Approx(0.5 * intact.gradient(0)).epsilon(1e-10));
  CHECK(partial.gradient(1) == doctest::Approx(intact.gradient(1)).epsilon(1e-10));
}

TEST_CASE("zero forcing gives zero multipliers") {
  const StructuralModel model = two_dof_model();
  const Matrix forcing = Matrix::Zero(2, 31);
  const AdjointState s = adjoint_solve(model, Matrix::Zero(2, 2), 0.01, forcing);
  CHECK(s.lambda_u.norm() == 0.0);
  CHECK(s.lambda_v.norm() == 0.0);
  CHECK(s.lambda_a.norm() == 0.0);
}

TEST_CASE("linear acceleration scheme gradient matches central differences") {
  const StructuralModel model = two_dof_model();
  const GroundMotion gm = short_record(50, 0.005);
  const ScenarioSet set = two_damper_scenarios();
  const DesignVector design{(Vector(2) << 0.4, 0.3).finished(), 40.0};
  const ConstraintParams params{8, 8};
  const NewmarkParams lin = NewmarkParams::linear_acceleration();
  const GradientResult r = adjoint_gradient(model, design, set[0], gm, params, lin);
  Vector fd(2);
  for (Index k = 0; k < 2; ++k) {
    auto g = [&](double dx) {
      DesignVector d = design;
      d.x(k) += dx;
      const auto h = newmark_solve(model, assemble_added_damping(model, d, set[0]), gm, lin);
      return evaluate_constraint(h, model, params).g;
    };
    fd(k) = (g(1e-5) - g(-1e-5)) / 2e-5;
  }
  CHECK(relative_error(r.gradient, fd) <= 1e-6);
}
