#include "gptkit/effects.hpp"

#include <cmath>

namespace gpt {

EffectAlgebra effect_algebra(const StateSpace& k, int dim_cap) {
  const int d = k.lifted_dim;
  require(d <= dim_cap, Err::DimensionTooLarge, "effect enumeration above dimension cap");
  Matrix verts(static_cast<int>(k.vertices.size()), d);
  for (size_t i = 0; i < k.vertices.size(); ++i) verts.row(static_cast<int>(i)) = k.vertices[i].transpose();
  require(numeric_rank(verts) == d, Err::DegenerateCone,
          "vertices do not span the lifted space; positive cone contains a line");

  EffectAlgebra out;
  out.unit = unit_effect(k);
  out.positive_generators = extreme_rays(verts, dim_cap);

  // Effect polytope vertices via homogenization in one extra coordinate t:
  // the cone {(f,t) : 0 <= <v,f> <= t for all vertices v} has rays (f,t) with
  // t > 0 in bijection with effect vertices f/t.
  Matrix homog(2 * verts.rows(), d + 1);
  for (int i = 0; i < verts.rows(); ++i) {
    homog.row(2 * i).head(d) = verts.row(i);
    homog(2 * i, d) = 0.0;
    homog.row(2 * i + 1).head(d) = -verts.row(i);
    homog(2 * i + 1, d) = 1.0;
  }
  std::vector<Vector> rays = extreme_rays(homog, dim_cap + 1);
  for (const Vector& r : rays) {
    if (r(d) <= kSignTol * r.lpNorm<Eigen::Infinity>())
      throw Error(Err::DegenerateCone, "effect polytope is unbounded");
    out.effect_vertices.push_back(r.head(d) / r(d));
  }
  return out;
}

bool is_effect(const StateSpace& k, const Effect& f, double tol) {
  require(static_cast<int>(f.size()) == k.lifted_dim, Err::DimensionMismatch,
          "effect dimension does not match state space");
  require(all_finite(f), Err::NonFinite, "effect has non-finite entries");
  for (const Vector& v : k.vertices) {
    double p = v.dot(f);
    if (p < -tol || p > 1.0 + tol) return false;
  }
  return true;
}

Effect complement(const StateSpace& k, const Effect& f, double tol) {
  require(is_effect(k, f, tol), Err::NotAnEffect, "complement of a non-effect");
  return unit_effect(k) - f;
}

bool effect_leq(const StateSpace& k, const Effect& f, const Effect& g, double tol) {
  require(f.size() == g.size() && static_cast<int>(f.size()) == k.lifted_dim,
          Err::DimensionMismatch, "effect dimensions do not match");
  for (const Vector& v : k.vertices)
    if (v.dot(g - f) < -tol) return false;
  return true;
}

RestrictedTheory state_space_of_effects(const std::vector<Effect>& effect_set, const Vector& unit,
                                        int dim_cap, double tol) {
  require(!effect_set.empty(), Err::EmptyInput, "empty effect set");
  const int d = static_cast<int>(unit.size());
  for (const Effect& e : effect_set)
    require(static_cast<int>(e.size()) == d, Err::DimensionMismatch,
            "effect dimension does not match unit");

  Matrix effs(static_cast<int>(effect_set.size()), d);
  for (size_t i = 0; i < effect_set.size(); ++i) effs.row(static_cast<int>(i)) = effect_set[i].transpose();
  ConeRep eff_cone;
  eff_cone.generators = effect_set;
  require(cone_contains(eff_cone, unit, tol), Err::NoUnit,
          "unit is not reachable inside the cone of the effect set");

  Matrix stacked(effs.rows() + 1, d);
  stacked.topRows(effs.rows()) = effs;
  stacked.row(effs.rows()) = unit.transpose();
  Matrix q = row_space_basis(stacked);  // d x r, orthonormal columns
  const int r = static_cast<int>(q.cols());
  const bool separates = (r == d);
  if (separates) q = Matrix::Identity(d, d);  // keep the original coordinates

  // Work in span coordinates; states of the restricted theory are the
  // normalized extreme rays of the dual cone of the projected effects.
  Matrix effs_r = effs * q;  // each row is an effect in span coordinates
  Vector unit_r = q.transpose() * unit;
  require(effs_r.rows() >= r, Err::DegenerateCone, "too few effects to cut a pointed cone");
  std::vector<Vector> rays = extreme_rays(effs_r, dim_cap);

  // Choose coordinates so the unit is again the last-coordinate selector:
  // keep r-1 standard coordinates (dropping the one most aligned with the
  // unit) and append the unit pairing as the last coordinate.
  int jstar = 0;
  for (int i = 1; i < r; ++i)
    if (std::abs(unit_r(i)) > std::abs(unit_r(jstar))) jstar = i;
  Matrix s = Matrix::Zero(r, r);
  int row = 0;
  for (int i = 0; i < r; ++i)
    if (i != jstar) s(row++, i) = 1.0;
  s.row(r - 1) = unit_r.transpose();
  require(numeric_rank(s) == r, Err::NumericalFailure, "unit-aligned basis change is singular");

  RestrictedTheory out;
  out.separates = separates;
  out.transform = s * q.transpose();
  std::vector<Vector> verts;
  for (const Vector& rho : rays) {
    double p = rho.dot(unit_r);
    require(p > tol * rho.lpNorm<Eigen::Infinity>(), Err::DegenerateCone,
            "restricted state set is unbounded (unit is not an order unit)");
    Vector v = s * (rho / p);
    v(r - 1) = 1.0;  // exact by construction, clean up roundoff
    verts.push_back(v);
  }
  out.space = from_lifted_vertices(std::move(verts), "restricted");
  return out;
}

}  // namespace gpt
