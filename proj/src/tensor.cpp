#include "gptkit/tensor.hpp"

#include <cmath>

#include "gptkit/lp.hpp"

namespace gpt {

StateSpace min_tensor(const StateSpace& a, const StateSpace& b) {
  std::vector<Vector> verts;
  verts.reserve(a.vertices.size() * b.vertices.size());
  for (const Vector& va : a.vertices)
    for (const Vector& vb : b.vertices) verts.push_back(kron(va, vb));
  // Products of extreme points are extreme here, so no pruning is needed;
  // keeping the list as-is fixes the vertex order to A-major.
  StateSpace out;
  out.name = "min(" + a.name + "," + b.name + ")";
  out.lifted_dim = a.lifted_dim * b.lifted_dim;
  out.vertices = std::move(verts);
  return out;
}

std::vector<Vector> product_generators(const StateSpace& a, const StateSpace& b, int dim_cap) {
  EffectAlgebra ea = effect_algebra(a, dim_cap);
  EffectAlgebra eb = effect_algebra(b, dim_cap);
  std::vector<Vector> gens;
  gens.reserve(ea.positive_generators.size() * eb.positive_generators.size());
  for (const Vector& ga : ea.positive_generators)
    for (const Vector& gb : eb.positive_generators) gens.push_back(kron(ga, gb));
  return gens;
}

bool max_tensor_contains(const StateSpace& a, const StateSpace& b, const Vector& phi,
                         double tol) {
  const int d = a.lifted_dim * b.lifted_dim;
  require(static_cast<int>(phi.size()) == d, Err::DimensionMismatch,
          "bipartite vector has the wrong dimension");
  require(all_finite(phi), Err::NonFinite, "bipartite vector has non-finite entries");
  if (std::abs(phi(d - 1) - 1.0) > std::max(tol, kEqTol)) return false;  // <phi, 1x1> = 1
  for (const Vector& g : product_generators(a, b))
    if (phi.dot(g) < -tol) return false;
  return true;
}

StateSpace max_tensor_vertices(const StateSpace& a, const StateSpace& b, int dim_cap) {
  const int d = a.lifted_dim * b.lifted_dim;
  require(d <= dim_cap, Err::DimensionTooLarge, "max tensor enumeration above dimension cap");
  std::vector<Vector> gens = product_generators(a, b, dim_cap);
  Matrix rows(static_cast<int>(gens.size()), d);
  for (size_t i = 0; i < gens.size(); ++i) rows.row(static_cast<int>(i)) = gens[i].transpose();
  std::vector<Vector> rays = extreme_rays(rows, dim_cap);
  std::vector<Vector> verts;
  for (const Vector& r : rays) {
    // kron(1_A, 1_B) is again the last-coordinate selector, so normalizing on
    // the product unit means dividing by the last entry.
    double p = r(d - 1);
    require(p > kSignTol * r.lpNorm<Eigen::Infinity>(), Err::DegenerateCone,
            "max tensor cone has a ray the product unit does not see");
    verts.push_back(r / p);
  }
  StateSpace out;
  out.name = "max(" + a.name + "," + b.name + ")";
  out.lifted_dim = d;
  out.vertices = std::move(verts);
  return out;
}

BipartiteContext make_context(StateSpace a, StateSpace b, TensorRule rule) {
  require(rule != TensorRule::Explicit, Err::MalformedProblem,
          "explicit contexts need a vertex list");
  BipartiteContext ctx;
  ctx.a = std::move(a);
  ctx.b = std::move(b);
  ctx.rule = rule;
  return ctx;
}

BipartiteContext make_explicit_context(StateSpace a, StateSpace b, std::vector<Vector> vertices,
                                       double tol) {
  require(!vertices.empty(), Err::EmptyInput, "explicit context needs vertices");
  // Sandwich check: every min vertex must be inside, every supplied vertex
  // must pass the max membership test.
  StateSpace hull = from_lifted_vertices(vertices, "explicit");
  for (const Vector& v : vertices)
    require(max_tensor_contains(a, b, v, tol), Err::MalformedProblem,
            "explicit vertex falls outside the max tensor product");
  StateSpace mn = min_tensor(a, b);
  for (const Vector& v : mn.vertices)
    require(contains(hull, v, tol), Err::MalformedProblem,
            "explicit state set does not contain the min tensor product");
  BipartiteContext ctx;
  ctx.a = std::move(a);
  ctx.b = std::move(b);
  ctx.rule = TensorRule::Explicit;
  ctx.explicit_vertices = std::move(vertices);
  return ctx;
}

bool context_contains(const BipartiteContext& ctx, const Vector& phi, double tol) {
  switch (ctx.rule) {
    case TensorRule::Max:
      return max_tensor_contains(ctx.a, ctx.b, phi, tol);
    case TensorRule::Min:
      return contains(min_tensor(ctx.a, ctx.b), phi, tol);
    case TensorRule::Explicit: {
      StateSpace hull;
      hull.name = "explicit";
      hull.lifted_dim = ctx.a.lifted_dim * ctx.b.lifted_dim;
      hull.vertices = ctx.explicit_vertices;
      return contains(hull, phi, tol);
    }
  }
  return false;
}

SeparabilityResult is_separable(const StateSpace& a, const StateSpace& b, const Vector& phi,
                                double tol) {
  StateSpace mn = min_tensor(a, b);
  require(static_cast<int>(phi.size()) == mn.lifted_dim, Err::DimensionMismatch,
          "bipartite vector has the wrong dimension");
  const int n = static_cast<int>(mn.vertices.size());
  LpBuilder lp;
  std::vector<int> lam = lp.add_vars(n, 0.0);
  for (int c = 0; c < mn.lifted_dim; ++c) {
    LpBuilder::Terms row;
    for (int i = 0; i < n; ++i) row.push_back({lam[i], mn.vertices[i](c)});
    lp.add_eq(row, phi(c));
  }
  LpBuilder::Terms ones;
  for (int v : lam) ones.push_back({v, 1.0});
  lp.add_eq(ones, 1.0);
  LpOutcome out = lp.solve(tol);

  SeparabilityResult res;
  if (out.status == LpStatus::Optimal) {
    res.separable = true;
    res.coefficients = Vector(n);
    for (int i = 0; i < n; ++i) res.coefficients(i) = lp.value(out, lam[i]);
    return res;
  }
  res.separable = false;
  Separator sep = separating_functional(mn.vertices, phi, tol);
  // separating_functional puts the vertices strictly below phi; flip the sign
  // so the witness is nonnegative on products and negative on phi, then scale
  // the violation to exactly -1.
  Vector w = -sep.normal;
  w(mn.lifted_dim - 1) -= sep.offset;
  double at_phi = w.dot(phi);
  require(at_phi < -tol, Err::NumericalFailure, "witness does not separate");
  res.witness = w / (-at_phi);
  return res;
}

Vector partial_contract(int dim_a, int dim_b, const Vector& phi, const Vector& f, Leg leg) {
  require(static_cast<int>(phi.size()) == dim_a * dim_b, Err::DimensionMismatch,
          "bipartite vector has the wrong dimension");
  // A-major layout: entry (i, j) lives at i*dim_b + j.
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      phi.data(), dim_a, dim_b);
  if (leg == Leg::B) {
    require(static_cast<int>(f.size()) == dim_b, Err::DimensionMismatch,
            "functional dimension does not match leg B");
    return m * f;
  }
  require(static_cast<int>(f.size()) == dim_a, Err::DimensionMismatch,
          "functional dimension does not match leg A");
  return m.transpose() * f;
}

std::pair<double, Vector> conditional_state(const BipartiteContext& ctx, const Vector& phi,
                                            const Effect& f, Leg leg, double tol) {
  const StateSpace& measured = (leg == Leg::A) ? ctx.a : ctx.b;
  const StateSpace& survivor = (leg == Leg::A) ? ctx.b : ctx.a;
  require(is_effect(measured, f, std::max(tol, kSignTol)), Err::NotAnEffect,
          "conditioning on a non-effect");
  Vector r = partial_contract(ctx.a.lifted_dim, ctx.b.lifted_dim, phi, f, leg);
  double p = r(survivor.lifted_dim - 1);  // pairing with the survivor's unit
  if (p <= tol) return {std::max(p, 0.0), Vector()};
  return {p, Vector(r / p)};
}

std::optional<std::pair<Vector, Vector>> product_decomposition_if_pure_marginal(
    const BipartiteContext& ctx, const Vector& phi, double tol) {
  Vector marg_a =
      partial_contract(ctx.a.lifted_dim, ctx.b.lifted_dim, phi, unit_effect(ctx.b), Leg::B);
  if (!is_pure(ctx.a, marg_a, tol)) return std::nullopt;
  Vector marg_b =
      partial_contract(ctx.a.lifted_dim, ctx.b.lifted_dim, phi, unit_effect(ctx.a), Leg::A);
  Vector prod = kron(marg_a, marg_b);
  require((prod - phi).lpNorm<Eigen::Infinity>() <= std::max(tol, kEqTol) * 10.0,
          Err::MalformedProblem,
          "pure marginal without product structure: state set is not between min and max");
  return std::make_pair(marg_a, marg_b);
}

bool min_equals_max(const StateSpace& a, const StateSpace& b, int dim_cap) {
  StateSpace mx = max_tensor_vertices(a, b, dim_cap);
  for (const Vector& v : mx.vertices)
    if (!is_separable(a, b, v).separable) return false;
  return true;
}

}  // namespace gpt
