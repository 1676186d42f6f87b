#include <doctest.h>

#include <random>

#include "gptkit/lp.hpp"

using namespace gpt;

TEST_CASE("corner optimum with slacks") {
  // max x + 2y s.t. x + y <= 4, x <= 3, x,y >= 0 -> (3, 1)? no: optimum (0,4).
  LpBuilder lp;
  int x = lp.add_var(-1.0);
  int y = lp.add_var(-2.0);
  lp.add_le({{x, 1.0}, {y, 1.0}}, 4.0);
  lp.add_le({{x, 1.0}}, 3.0);
  LpOutcome out = lp.solve();
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(out.value == doctest::Approx(-8.0));
  CHECK(lp.value(out, x) == doctest::Approx(0.0));
  CHECK(lp.value(out, y) == doctest::Approx(4.0));
}

TEST_CASE("free variables split correctly") {
  // min |free var constrained to -5|: x free, x = -5, cost +1 on x.
  LpBuilder lp;
  int x = lp.add_free_var(1.0);
  lp.add_eq({{x, 1.0}}, -5.0);
  LpOutcome out = lp.solve();
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(lp.value(out, x) == doctest::Approx(-5.0));
  CHECK(out.value == doctest::Approx(-5.0));
}

TEST_CASE("infeasibility yields a Farkas certificate") {
  // x1 + x2 = -1 with x >= 0 is infeasible; y = (-1) certifies it.
  LpProblem p;
  p.c = to_vector({0, 0});
  p.A = Matrix(1, 2);
  p.A << 1.0, 1.0;
  p.b = to_vector({-1});
  LpOutcome out = lp_solve(p);
  REQUIRE(out.status == LpStatus::Infeasible);
  REQUIRE(out.certificate.size() == 1);
  // y'A <= 0 and y'b > 0.
  Vector ya = p.A.transpose() * out.certificate;
  CHECK(ya.maxCoeff() <= 1e-9);
  CHECK(out.certificate.dot(p.b) > 1e-9);
  CHECK(out.certificate(0) == doctest::Approx(-1.0));
}

TEST_CASE("unbounded problems are detected") {
  LpBuilder lp;
  int x = lp.add_var(-1.0);
  int y = lp.add_var(0.0);
  lp.add_eq({{x, 1.0}, {y, -1.0}}, 0.0);
  CHECK(lp.solve().status == LpStatus::Unbounded);
}

TEST_CASE("redundant rows are tolerated") {
  LpBuilder lp;
  int x = lp.add_var(1.0);
  int y = lp.add_var(1.0);
  lp.add_eq({{x, 1.0}, {y, 1.0}}, 2.0);
  lp.add_eq({{x, 2.0}, {y, 2.0}}, 4.0);  // same constraint doubled
  lp.add_eq({{x, 1.0}}, 0.5);
  LpOutcome out = lp.solve();
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(lp.value(out, x) == doctest::Approx(0.5));
  CHECK(lp.value(out, y) == doctest::Approx(1.5));
}

TEST_CASE("random feasible systems solve and stay feasible") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> up(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    int m = 3 + trial % 4;
    int n = m + 2 + trial % 3;
    Matrix a(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = u(rng);
    Vector x0(n);
    for (int j = 0; j < n; ++j) x0(j) = up(rng);
    LpProblem p;
    p.A = a;
    p.b = a * x0;
    p.c = Vector(n);
    for (int j = 0; j < n; ++j) p.c(j) = u(rng);
    LpOutcome out = lp_solve(p);
    if (out.status == LpStatus::Unbounded) continue;
    REQUIRE(out.status == LpStatus::Optimal);
    CHECK((a * out.point - p.b).lpNorm<Eigen::Infinity>() <= 1e-7);
    CHECK(out.point.minCoeff() >= -1e-9);
    CHECK(out.value <= p.c.dot(x0) + 1e-7);  // no worse than the known point
  }
}

TEST_CASE("random infeasible systems produce valid certificates") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 3 + trial % 4;
    Matrix a(2, n);
    for (int j = 0; j < n; ++j) a(0, j) = u(rng);
    a.row(1) = a.row(0);  // same normal, contradictory right-hand sides
    LpProblem p;
    p.A = a;
    p.b = to_vector({1.0, -1.0});
    p.c = Vector::Zero(n);
    LpOutcome out = lp_solve(p);
    REQUIRE(out.status == LpStatus::Infeasible);
    Vector ya = p.A.transpose() * out.certificate;
    CHECK(ya.maxCoeff() <= 1e-8);
    CHECK(out.certificate.dot(p.b) > 1e-9);
  }
}
