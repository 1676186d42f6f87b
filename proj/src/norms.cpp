#include "gptkit/norms.hpp"

#include <cmath>

#include "gptkit/lp.hpp"

namespace gpt {

double order_unit_norm(const StateSpace& k, const Vector& f) {
  require(static_cast<int>(f.size()) == k.lifted_dim, Err::DimensionMismatch,
          "functional dimension does not match state space");
  double m = 0.0;
  for (const Vector& v : k.vertices) m = std::max(m, std::abs(v.dot(f)));
  return m;
}

double base_norm(const StateSpace& k, const Vector& psi, double tol) {
  require(static_cast<int>(psi.size()) == k.lifted_dim, Err::DimensionMismatch,
          "functional dimension does not match state space");
  require(all_finite(psi), Err::NonFinite, "input has non-finite entries");

  // The LP below is only exact on span(K); reject inputs outside it.
  Matrix verts(k.lifted_dim, static_cast<int>(k.vertices.size()));
  for (size_t i = 0; i < k.vertices.size(); ++i) verts.col(static_cast<int>(i)) = k.vertices[i];
  Vector ls = verts.colPivHouseholderQr().solve(psi);
  double resid = (verts * ls - psi).norm();
  require(resid <= 1e-7 * std::max(1.0, psi.norm()), Err::OutsideSpan,
          "input is outside the span of the state space");

  const int n = static_cast<int>(k.vertices.size());
  LpBuilder lp;
  std::vector<int> lam = lp.add_vars(n, 1.0);
  std::vector<int> mu = lp.add_vars(n, 1.0);
  for (int c = 0; c < k.lifted_dim; ++c) {
    LpBuilder::Terms row;
    for (int i = 0; i < n; ++i) {
      row.push_back({lam[i], k.vertices[i](c)});
      row.push_back({mu[i], -k.vertices[i](c)});
    }
    lp.add_eq(row, psi(c));
  }
  LpOutcome out = lp.solve(tol);
  require(out.status == LpStatus::Optimal, Err::NumericalFailure, "base norm LP did not solve");
  return out.value;
}

double dual_norm_oracle(const EffectAlgebra& ea, const Vector& psi) {
  double m = 0.0;
  for (const Vector& f : ea.effect_vertices)
    m = std::max(m, std::abs(psi.dot(2.0 * f - ea.unit)));
  return m;
}

double dual_norm_oracle(const StateSpace& k, const Vector& psi) {
  return dual_norm_oracle(effect_algebra(k), psi);
}

DiscriminationResult discrimination_probability(const StateSpace& k, const Vector& x0,
                                                const Vector& x1, double lambda, double tol) {
  require(lambda >= 0.0 && lambda <= 1.0, Err::BadPrior, "prior must lie in [0,1]");
  require(contains(k, x0, std::max(tol, kSignTol)), Err::NotAState, "x0 is not a state");
  require(contains(k, x1, std::max(tol, kSignTol)), Err::NotAState, "x1 is not a state");

  DiscriminationResult res;
  res.base_norm_value = base_norm(k, lambda * x0 - (1.0 - lambda) * x1, tol);
  res.p_succ = 0.5 * (1.0 + res.base_norm_value);

  // The optimum is attained at a vertex of the effect polytope; ties go to
  // the lowest-indexed vertex.
  EffectAlgebra ea = effect_algebra(k);
  double best = -1.0;
  for (const Vector& f : ea.effect_vertices) {
    double val = lambda * x0.dot(f) + (1.0 - lambda) * (1.0 - x1.dot(f));
    if (val > best + kSignTol) {
      best = val;
      res.optimal_effect = f;
    }
  }
  return res;
}

}  // namespace gpt
