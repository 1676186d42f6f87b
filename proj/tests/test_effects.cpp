#include <doctest.h>

#include "gptkit/effects.hpp"
#include "gptkit/models.hpp"

using namespace gpt;

namespace {

bool vec_in_list(const std::vector<Vector>& list, const Vector& v, double tol = 1e-7) {
  for (const Vector& u : list)
    if ((u - v).lpNorm<Eigen::Infinity>() <= tol) return true;
  return false;
}

bool ray_in_list(const std::vector<Vector>& list, const Vector& v, double tol = 1e-7) {
  Vector vn = v / v.lpNorm<Eigen::Infinity>();
  for (const Vector& u : list)
    if ((u / u.lpNorm<Eigen::Infinity>() - vn).lpNorm<Eigen::Infinity>() <= tol) return true;
  return false;
}

}  // namespace

TEST_CASE("square effect algebra") {
  StateSpace sq = boxworld_square();
  EffectAlgebra ea = effect_algebra(sq);
  REQUIRE(ea.positive_generators.size() == 4);
  CHECK(ray_in_list(ea.positive_generators, to_vector({1, 0, 0})));
  CHECK(ray_in_list(ea.positive_generators, to_vector({-1, 0, 1})));
  CHECK(ray_in_list(ea.positive_generators, to_vector({0, 1, 0})));
  CHECK(ray_in_list(ea.positive_generators, to_vector({0, -1, 1})));

  REQUIRE(ea.effect_vertices.size() == 6);
  CHECK(vec_in_list(ea.effect_vertices, to_vector({0, 0, 0})));
  CHECK(vec_in_list(ea.effect_vertices, to_vector({0, 0, 1})));
  CHECK(vec_in_list(ea.effect_vertices, to_vector({1, 0, 0})));
  CHECK(vec_in_list(ea.effect_vertices, to_vector({-1, 0, 1})));
  CHECK(vec_in_list(ea.effect_vertices, to_vector({0, 1, 0})));
  CHECK(vec_in_list(ea.effect_vertices, to_vector({0, -1, 1})));
}

TEST_CASE("simplex effect vertices are the subset sums of the readouts") {
  EffectAlgebra ea = effect_algebra(simplex(2));
  REQUIRE(ea.effect_vertices.size() == 4);
  CHECK(vec_in_list(ea.effect_vertices, to_vector({0, 0})));
  CHECK(vec_in_list(ea.effect_vertices, to_vector({0, 1})));
  CHECK(vec_in_list(ea.effect_vertices, to_vector({-1, 1})));
  CHECK(vec_in_list(ea.effect_vertices, to_vector({1, 0})));
  CHECK(effect_algebra(simplex(3)).effect_vertices.size() == 8);
}

TEST_CASE("effect membership, complement and order") {
  StateSpace sq = boxworld_square();
  Vector fx = boxworld::fx();
  CHECK(is_effect(sq, fx));
  CHECK(is_effect(sq, unit_effect(sq)));
  CHECK(!is_effect(sq, to_vector({2, 0, 0})));
  CHECK(!is_effect(sq, to_vector({-0.5, 0, 0.25})));
  CHECK((complement(sq, fx) - to_vector({-1, 0, 1})).norm() == doctest::Approx(0.0));
  CHECK_THROWS_AS(complement(sq, to_vector({2, 0, 0})), Error);
  CHECK(effect_leq(sq, 0.5 * fx, fx));
  CHECK(effect_leq(sq, fx, unit_effect(sq)));
  CHECK(!effect_leq(sq, fx, boxworld::fy()));
}

TEST_CASE("state/effect duality roundtrip") {
  for (const StateSpace& k :
       {simplex(2), simplex(4), boxworld_square(), regular_polygon(5)}) {
    EffectAlgebra ea = effect_algebra(k);
    RestrictedTheory rt = state_space_of_effects(ea.effect_vertices, ea.unit);
    CHECK(rt.separates);
    REQUIRE(rt.space.vertices.size() == k.vertices.size());
    for (const Vector& v : k.vertices) CHECK(vec_in_list(rt.space.vertices, v));
  }
}

TEST_CASE("non-separating effect set quotients to a bit") {
  StateSpace sq = boxworld_square();
  Vector fx = boxworld::fx();
  RestrictedTheory rt = state_space_of_effects({fx, Vector(unit_effect(sq) - fx)},
                                               unit_effect(sq));
  CHECK(!rt.separates);
  CHECK(rt.space.lifted_dim == 2);
  CHECK(rt.space.vertices.size() == 2);
  CHECK(is_simplex(rt.space));
}

TEST_CASE("missing unit is rejected") {
  StateSpace sq = boxworld_square();
  // fx alone cannot reach the unit.
  CHECK_THROWS_AS(state_space_of_effects({boxworld::fx()}, unit_effect(sq)), Error);
}
