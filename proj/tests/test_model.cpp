#include "doctest.h"
#include "support.hpp"

#include <Eigen/Eigenvalues>

using namespace fsdamp;
using namespace fsdamp::testing;

namespace {

StructuralModel sdof(double m, double k) {
  StructuralModel s;
  s.mass = Matrix::Constant(1, 1, m);
  s.stiffness = Matrix::Constant(1, 1, k);
  s.inherent_damping = Matrix::Zero(1, 1);
  s.influence = Vector::Ones(1);
  s.drift_transform = Matrix::Ones(1, 1);
  s.d_allow = Vector::Constant(1, 0.01);
  s.damper_transforms = {Matrix::Ones(1, 1)};
  return s;
}

}  // namespace

TEST_CASE("single degree of freedom frequency") {
  const auto modes = compute_lowest_modes(sdof(1.0, 4.0), 1);
  CHECK(modes[0].omega == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(modes[0].shape(0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-story frequencies match the quadratic formula") {
  // m = 1, k1 = k2 = 1: w^2 = (3 -+ sqrt 5) / 2.
  const StructuralModel m = make_shear_frame({{1.0, 1.0}, {1.0, 1.0}, 0.0, 1.0});
  const auto modes = compute_lowest_modes(m, 2);
  CHECK(modes[0].omega * modes[0].omega == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-11));
  CHECK(modes[1].omega * modes[1].omega == doctest::Approx((3.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-11));
  CHECK(modes[0].shape.dot(m.mass * modes[1].shape) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("identity mass and stiffness give unit frequencies") {
  StructuralModel m = make_shear_frame({{1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, 0.0, 1.0});
  m.stiffness = Matrix::Identity(3, 3);
  m.mass = Matrix::Identity(3, 3);
  for (const Mode& mode : compute_lowest_modes(m, 3)) CHECK(mode.omega == doctest::Approx(1.0));
}

TEST_CASE("modes agree with a dense generalized eigensolver") {
  const StructuralModel m =
      make_shear_frame({{120.0, 110.0, 100.0, 90.0, 60.0}, {9e4, 8e4, 7e4, 5e4, 3e4}, 0.0, 0.01});
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ref(m.stiffness, m.mass);
  const auto modes = compute_lowest_modes(m, 5);
  for (Index j = 0; j < 5; ++j) {
    CHECK(modes[j].omega == doctest::Approx(std::sqrt(ref.eigenvalues()(j))).epsilon(1e-10));
    CHECK(modes[j].shape.dot(m.mass * modes[j].shape) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("mode solver rejects a singular mass matrix") {
  StructuralModel m = make_shear_frame({{1.0, 1.0}, {1.0, 1.0}, 0.0, 1.0});
  m.mass(1, 1) = 0.0;
  CHECK_THROWS(compute_lowest_modes(m, 1));
}

TEST_CASE("Rayleigh coefficients") {
  const auto c = rayleigh_coefficients(0.05, 1.0, 3.0);
  CHECK(c.a0 == doctest::Approx(0.075).epsilon(1e-14));
  CHECK(c.a1 == doctest::Approx(0.025).epsilon(1e-14));
  CHECK_THROWS_AS(rayleigh_coefficients(0.05, 2.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(rayleigh_coefficients(0.05, 3.0, 1.0), std::invalid_argument);

  const StructuralModel m = make_shear_frame({{100.0, 100.0, 80.0}, {6e4, 5e4, 4e4}, 0.05, 0.01});
  const auto modes = compute_lowest_modes(m, 3);
  for (Index j = 0; j < 2; ++j) {
    const double zeta = modes[j].shape.dot(m.inherent_damping * modes[j].shape) / (2.0 * modes[j].omega);
    CHECK(std::abs(zeta - 0.05) <= 1e-10);
  }
}

TEST_CASE("added damping assembly") {
  const StructuralModel m = sdof(1.0, 1.0);
  const ScenarioSet set = enumerate_scenarios(1, 1, 1, 0.5);
  const DesignVector d{Vector::Ones(1), 150000.0};
  CHECK(assemble_added_damping(m, d, set[0])(0, 0) == 150000.0);
  CHECK(assemble_added_damping(m, d, set[1])(0, 0) == 0.0);
  CHECK(assemble_added_damping(m, d, set[2])(0, 0) == 75000.0);
}

TEST_CASE("added damping is linear in x and monotone in the Loewner order") {
  const StructuralModel m = make_shear_frame({{1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, 0.0, 1.0});
  const ScenarioSet set = enumerate_scenarios(3, 1, 2, 0.5);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Vector x(3), y(3);
    for (Index i = 0; i < 3; ++i) {
      x(i) = u(rng);
      y(i) = u(rng);
    }
    for (Index s = 0; s < set.size(); ++s) {
      const Matrix cx = assemble_added_damping(m, {x, 10.0}, set[s]);
      const Matrix cy = assemble_added_damping(m, {y, 10.0}, set[s]);
      const Matrix cxy = assemble_added_damping(m, {0.3 * x + 0.7 * y, 10.0}, set[s]);
      CHECK((cxy - 0.3 * cx - 0.7 * cy).norm() <= 1e-12);
      const Matrix big = assemble_added_damping(m, {x.cwiseMax(y), 10.0}, set[s]);
      Eigen::SelfAdjointEigenSolver<Matrix> eig(big - cx);
      CHECK(eig.eigenvalues().minCoeff() >= -1e-12);
      Matrix sum = Matrix::Zero(3, 3);
      for (Index k = 0; k < 3; ++k) sum += x(k) * added_damping_derivative(m, 10.0, set[s], k);
      CHECK((sum - cx).norm() <= 1e-12);
    }
  }
}

TEST_CASE("model validation names the offending field") {
  StructuralModel m = make_shear_frame({{1.0, 1.0}, {1.0, 1.0}, 0.0, 1.0});
  m.drift_transform = Matrix::Ones(2, 3);
  CHECK_THROWS_WITH_AS(m.validate(), doctest::Contains("drift_transform"), std::invalid_argument);
}
