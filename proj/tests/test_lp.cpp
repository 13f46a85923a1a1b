#include "doctest.h"
#include "fsdamp/optimizer.hpp"
#include "support.hpp"

using namespace fsdamp;
using namespace fsdamp::testing;

TEST_CASE("no planes gives the lower corner of the box") {
  const Vector center = Vector::Constant(3, 0.5);
  const LpResult r = solve_move_limited_lp(Vector::Ones(3), {}, center, 0.02);
  CHECK(r.status == LpStatus::optimal);
  CHECK((r.x - Vector::Constant(3, 0.48)).norm() <= 1e-14);
}

TEST_CASE("single plane") {
  // x1 + x2 >= 1 written as -x1 - x2 + 1 <= 0, in a unit box.
  LpProblem lp;
  lp.cost = Vector::Ones(2);
  lp.a = -Matrix::Ones(1, 2);
  lp.b = -Vector::Ones(1);
  lp.lower = Vector::Zero(2);
  lp.upper = Vector::Ones(2);
  const LpResult r = solve_lp(lp);
  CHECK(r.status == LpStatus::optimal);
  CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-14));

  CuttingPlane plane;
  plane.gradient = -Vector::Ones(2);
  plane.point = Vector::Constant(2, 0.25);
  plane.value = 0.5;
  std::vector<CuttingPlane> planes{plane};
  const LpResult m = solve_move_limited_lp(Vector::Ones(2), planes, Vector::Constant(2, 0.5), 0.3);
  CHECK(m.x.sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("infeasible rows return the least-violating point") {
  LpProblem lp;
  lp.cost = Vector::Ones(2);
  lp.a = -Matrix::Ones(1, 2);
  lp.b = -Vector::Constant(1, 3.0);  // x1 + x2 >= 3 in the unit box
  lp.lower = Vector::Zero(2);
  lp.upper = Vector::Ones(2);
  const LpResult r = solve_lp(lp);
  CHECK(r.status == LpStatus::infeasible);
  CHECK(r.x.sum() == doctest::Approx(2.0));
  CHECK(r.infeasibility == doctest::Approx(1.0));
}

TEST_CASE("random LPs agree with vertex enumeration") {
  std::mt19937 rng(2024);
  for (int t = 0; t < 200; ++t) {
    const LpProblem lp = random_lp(rng);
    const LpResult r = solve_lp(lp);
    CAPTURE(t);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(std::abs(r.objective - vertex_enumeration_min(lp)) <= 1e-9);
    CHECK(((lp.a * r.x - lp.b).array() <= 1e-9).all());
  }
}

TEST_CASE("degenerate LP with repeated planes terminates") {
  LpProblem lp;
  lp.cost = (Vector(3) << 1.0, 1.0, 1.0).finished();
  lp.a = Matrix(4, 3);
  lp.a << -1, -1, 0, -1, -1, 0, 0, -1, -1, -1, 0, -1;
  lp.b = -Vector::Ones(4);
  lp.lower = Vector::Zero(3);
  lp.upper = Vector::Ones(3);
  const LpResult r = solve_lp(lp);
  CHECK(r.status == LpStatus::optimal);
  CHECK(r.objective == doctest::Approx(vertex_enumeration_min(lp)).epsilon(1e-12));
}
