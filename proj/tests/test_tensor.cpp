#include <doctest.h>

#include "gptkit/models.hpp"
#include "gptkit/tensor.hpp"

using namespace gpt;

TEST_CASE("min tensor vertices are the products") {
  StateSpace sq = boxworld_square();
  StateSpace mn = min_tensor(sq, simplex(2));
  CHECK(mn.lifted_dim == 6);
  REQUIRE(mn.vertices.size() == 8);
  CHECK((mn.vertices[0] - kron(sq.vertices[0], simplex(2).vertices[0])).norm() == 0.0);
  for (const Vector& v : mn.vertices) CHECK(v(5) == 1.0);
}

TEST_CASE("max tensor of two squares has the eight entangled extra vertices") {
  StateSpace sq = boxworld_square();
  StateSpace mx = max_tensor_vertices(sq, sq);
  CHECK(mx.vertices.size() == 24);
  StateSpace mn = min_tensor(sq, sq);
  int entangled = 0;
  for (const Vector& v : mx.vertices) {
    CHECK(max_tensor_contains(sq, sq, v));
    if (!is_separable(sq, sq, v).separable) ++entangled;
  }
  CHECK(entangled == 8);
}

TEST_CASE("the shared boxworld state is entangled with a witness") {
  StateSpace sq = boxworld_square();
  Vector x0 = boxworld::pr_state();
  CHECK(max_tensor_contains(sq, sq, x0));
  CHECK(!contains(min_tensor(sq, sq), x0));
  SeparabilityResult r = is_separable(sq, sq, x0);
  REQUIRE(!r.separable);
  CHECK(r.witness.dot(x0) == doctest::Approx(-1.0));
  for (const Vector& v : min_tensor(sq, sq).vertices) CHECK(r.witness.dot(v) >= -1e-9);
}

TEST_CASE("separable states come with convex coefficients") {
  StateSpace sq = boxworld_square();
  StateSpace mn = min_tensor(sq, sq);
  Vector phi = 0.5 * mn.vertices[0] + 0.25 * mn.vertices[5] + 0.25 * mn.vertices[10];
  SeparabilityResult r = is_separable(sq, sq, phi);
  REQUIRE(r.separable);
  CHECK(r.coefficients.minCoeff() >= -1e-9);
  CHECK(r.coefficients.sum() == doctest::Approx(1.0));
  Vector rebuilt = Vector::Zero(9);
  for (int i = 0; i < r.coefficients.size(); ++i) rebuilt += r.coefficients(i) * mn.vertices[i];
  CHECK((rebuilt - phi).lpNorm<Eigen::Infinity>() <= 1e-7);
}

TEST_CASE("min equals max exactly when one side is classical") {
  StateSpace sq = boxworld_square();
  CHECK(min_equals_max(simplex(2), simplex(3)));
  CHECK(min_equals_max(sq, simplex(2)));
  CHECK(min_equals_max(simplex(3), sq));
  CHECK(!min_equals_max(sq, sq));
  CHECK(!min_equals_max(sq, regular_polygon(5)));
}

TEST_CASE("partial contraction computes marginals") {
  StateSpace sq = boxworld_square();
  Vector phi = kron(boxworld::s10(), boxworld::s01());
  Vector ma = partial_contract(3, 3, phi, unit_effect(sq), Leg::B);
  Vector mb = partial_contract(3, 3, phi, unit_effect(sq), Leg::A);
  CHECK((ma - boxworld::s10()).norm() == doctest::Approx(0.0));
  CHECK((mb - boxworld::s01()).norm() == doctest::Approx(0.0));
  // Contraction with an effect: <phi, f (x) g> = <ma_f, g>.
  Vector f = boxworld::fx(), g = boxworld::fy();
  CHECK(partial_contract(3, 3, phi, f, Leg::A).dot(g) == doctest::Approx(phi.dot(kron(f, g))));
}

TEST_CASE("conditional states of the shared boxworld state") {
  StateSpace sq = boxworld_square();
  BipartiteContext ctx = make_context(sq, sq, TensorRule::Max);
  Vector x0 = boxworld::pr_state();
  auto [p, cond] = conditional_state(ctx, x0, boxworld::fx(), Leg::A);
  CHECK(p > 0.0);
  CHECK(p <= 1.0 + 1e-12);
  CHECK(contains(sq, cond));
  // Zero-probability branch returns probability 0 and no state.
  auto [pz, condz] = conditional_state(ctx, kron(boxworld::s00(), boxworld::s00()),
                                       boxworld::fx(), Leg::A);
  CHECK(pz == doctest::Approx(0.0));
  CHECK(condz.size() == 0);
}

TEST_CASE("pure marginals force product structure") {
  StateSpace sq = boxworld_square();
  BipartiteContext ctx = make_context(sq, sq, TensorRule::Max);
  Vector mixed_b = 0.5 * boxworld::s00() + 0.5 * boxworld::s11();
  Vector prod = kron(boxworld::s10(), mixed_b);
  auto dec = product_decomposition_if_pure_marginal(ctx, prod);
  REQUIRE(dec.has_value());
  CHECK((dec->first - boxworld::s10()).norm() <= 1e-12);
  CHECK((dec->second - mixed_b).norm() <= 1e-12);
  // The shared state has maximally mixed marginals: no decomposition.
  CHECK(!product_decomposition_if_pure_marginal(ctx, boxworld::pr_state()).has_value());
}

TEST_CASE("explicit contexts must sit between min and max") {
  StateSpace sq = boxworld_square();
  StateSpace mn = min_tensor(sq, sq);
  std::vector<Vector> verts = mn.vertices;
  verts.push_back(boxworld::pr_state());
  BipartiteContext ctx = make_explicit_context(sq, sq, verts);
  CHECK(context_contains(ctx, boxworld::pr_state()));
  // Dropping product vertices violates the lower bound.
  CHECK_THROWS_AS(make_explicit_context(sq, sq, {mn.vertices[0], mn.vertices[1]}), Error);
  // A vertex outside max violates the upper bound.
  std::vector<Vector> bad = mn.vertices;
  Vector outside = 2.0 * boxworld::pr_state() - kron(barycenter(sq), barycenter(sq));
  bad.push_back(outside);
  CHECK_THROWS_AS(make_explicit_context(sq, sq, bad), Error);
}
