#include "gptkit/compatibility.hpp"

#include <cmath>

#include "gptkit/lp.hpp"

namespace gpt {

namespace {

int product_dim(const std::vector<const StateSpace*>& factors) {
  int d = 1;
  for (const StateSpace* f : factors) d *= f->lifted_dim;
  return d;
}

// Visit all tuples over the given sizes in odometer order.
template <typename Fn>
void for_each_tuple(const std::vector<int>& sizes, Fn&& fn) {
  std::vector<int> idx(sizes.size(), 0);
  while (true) {
    fn(idx);
    int pos = static_cast<int>(sizes.size()) - 1;
    while (pos >= 0 && ++idx[pos] == sizes[pos]) idx[pos--] = 0;
    if (pos < 0) break;
  }
}

Vector kron_tuple(const std::vector<const std::vector<Vector>*>& lists,
                  const std::vector<int>& idx) {
  Vector out = (*lists[0])[idx[0]];
  for (size_t i = 1; i < lists.size(); ++i) out = kron(out, (*lists[i])[idx[i]]);
  return out;
}

// Constrain the free variables y (coordinates of a multipartite functional)
// to the cone of the chosen tensor rule: nonnegativity against all products
// of positive generators for Max, a conic combination of product vertices
// for Min.
void add_cone_membership(LpBuilder& lp, const std::vector<int>& y,
                         const std::vector<const StateSpace*>& factors, TensorRule rule,
                         int dim_cap) {
  require(rule != TensorRule::Explicit, Err::MalformedProblem,
          "multipartite feasibility supports the min and max rules");
  const int d = product_dim(factors);
  require(static_cast<int>(y.size()) == d, Err::DimensionMismatch, "member variable count");

  if (rule == TensorRule::Max) {
    std::vector<std::vector<Vector>> gens;
    std::vector<const std::vector<Vector>*> lists;
    std::vector<int> sizes;
    for (const StateSpace* f : factors) gens.push_back(effect_algebra(*f, dim_cap).positive_generators);
    for (const std::vector<Vector>& g : gens) {
      lists.push_back(&g);
      sizes.push_back(static_cast<int>(g.size()));
    }
    for_each_tuple(sizes, [&](const std::vector<int>& idx) {
      Vector g = kron_tuple(lists, idx);
      LpBuilder::Terms row;
      for (int c = 0; c < d; ++c)
        if (std::abs(g(c)) > 0.0) row.push_back({y[c], g(c)});
      lp.add_ge(row, 0.0);
    });
    return;
  }

  // Min: y == sum of lambda_t * (product vertex t), lambda >= 0.
  std::vector<const std::vector<Vector>*> lists;
  std::vector<int> sizes;
  int count = 1;
  for (const StateSpace* f : factors) {
    lists.push_back(&f->vertices);
    sizes.push_back(static_cast<int>(f->vertices.size()));
    count *= static_cast<int>(f->vertices.size());
  }
  std::vector<int> lam = lp.add_vars(count, 0.0);
  std::vector<Vector> prods;
  prods.reserve(count);
  for_each_tuple(sizes, [&](const std::vector<int>& idx) { prods.push_back(kron_tuple(lists, idx)); });
  for (int c = 0; c < d; ++c) {
    LpBuilder::Terms row;
    row.push_back({y[c], 1.0});
    for (int t = 0; t < count; ++t)
      if (std::abs(prods[t](c)) > 0.0) row.push_back({lam[t], -prods[t](c)});
    lp.add_eq(row, 0.0);
  }
}

Matrix as_matrix(const Vector& phi, int rows, int cols) {
  require(static_cast<int>(phi.size()) == rows * cols, Err::DimensionMismatch,
          "bipartite vector has the wrong dimension");
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = phi(i * cols + j);
  return m;
}

}  // namespace

MeasurementCompatVerdict measurements_compatible(const Measurement& m1, const Measurement& m2,
                                                 double tol) {
  require(same_space(m1.space, m2.space, kEqTol), Err::SpaceMismatch,
          "measurements live on different spaces");
  const StateSpace& k = m1.space;
  const int d = k.lifted_dim;
  const int n1 = static_cast<int>(m1.effects.size());
  const int n2 = static_cast<int>(m2.effects.size());

  LpBuilder lp;
  std::vector<int> h = lp.add_free_vars(n1 * n2 * d, 0.0);
  auto H = [&](int i, int j, int c) { return h[(i * n2 + j) * d + c]; };

  // Row sums reproduce m1, column sums reproduce m2.
  for (int i = 0; i < n1; ++i)
    for (int c = 0; c < d; ++c) {
      LpBuilder::Terms row;
      for (int j = 0; j < n2; ++j) row.push_back({H(i, j, c), 1.0});
      lp.add_eq(row, m1.effects[i](c));
    }
  for (int j = 0; j < n2; ++j)
    for (int c = 0; c < d; ++c) {
      LpBuilder::Terms row;
      for (int i = 0; i < n1; ++i) row.push_back({H(i, j, c), 1.0});
      lp.add_eq(row, m2.effects[j](c));
    }
  // Positivity of every joint effect on every vertex; the upper bound is
  // implied by the row sums.
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      for (const Vector& v : k.vertices) {
        LpBuilder::Terms row;
        for (int c = 0; c < d; ++c) row.push_back({H(i, j, c), v(c)});
        lp.add_ge(row, 0.0);
      }

  LpOutcome out = lp.solve(tol);
  MeasurementCompatVerdict verdict;
  verdict.outcomes1 = n1;
  verdict.outcomes2 = n2;
  if (out.status == LpStatus::Optimal) {
    verdict.compatible = true;
    verdict.grid.assign(n1, std::vector<Effect>(n2));
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j) {
        Vector e(d);
        for (int c = 0; c < d; ++c) e(c) = lp.value(out, H(i, j, c));
        verdict.grid[i][j] = e;
      }
    return verdict;
  }
  require(out.status == LpStatus::Infeasible, Err::NumericalFailure,
          "compatibility LP neither solved nor certified infeasible");
  verdict.compatible = false;
  verdict.certificate = out.certificate;
  verdict.problem = lp.build();
  return verdict;
}

double measurement_witness_value(const MeasurementCompatVerdict& verdict, const StateSpace& k,
                                 const Measurement& m1, const Measurement& m2) {
  require(verdict.certificate.size() > 0, Err::MalformedProblem,
          "verdict carries no certificate");
  require(static_cast<int>(m1.effects.size()) == verdict.outcomes1 &&
              static_cast<int>(m2.effects.size()) == verdict.outcomes2,
          Err::InvalidArity, "witness expects matching outcome counts");
  const int d = k.lifted_dim;
  // Assemble the right-hand side for this pair in the same row order the
  // feasibility LP used; positivity rows contribute zero.
  Vector b = Vector::Zero(verdict.certificate.size());
  int r = 0;
  for (int i = 0; i < verdict.outcomes1; ++i)
    for (int c = 0; c < d; ++c) b(r++) = m1.effects[i](c);
  for (int j = 0; j < verdict.outcomes2; ++j)
    for (int c = 0; c < d; ++c) b(r++) = m2.effects[j](c);
  return -verdict.certificate.dot(b);
}

double compatibility_robustness(const Measurement& m1, const Measurement& m2, double tol,
                                int iterations) {
  const StateSpace& k = m1.space;
  auto noisy = [&](const Measurement& m, double t) {
    std::vector<Effect> effs;
    const double n = static_cast<double>(m.effects.size());
    for (const Effect& f : m.effects) effs.push_back(t * f + ((1.0 - t) / n) * unit_effect(k));
    return measurement_from_effects(k, effs, kEqTol);
  };
  auto compatible_at = [&](double t) {
    return measurements_compatible(noisy(m1, t), noisy(m2, t), tol).compatible;
  };
  if (compatible_at(1.0)) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < iterations; ++it) {
    double mid = 0.5 * (lo + hi);
    (compatible_at(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ChannelCompatVerdict channels_compatible(const Channel& c1, const Channel& c2, TensorRule rule,
                                         double tol, int dim_cap) {
  require(same_space(c1.domain, c2.domain, kEqTol), Err::SpaceMismatch,
          "channels to be joined need a common domain");
  const StateSpace& b = c1.codomain;
  const StateSpace& c = c2.codomain;
  const int da = c1.domain.lifted_dim;
  const int db = b.lifted_dim;
  const int dc = c.lifted_dim;
  const int dbc = db * dc;

  LpBuilder lp;
  std::vector<int> mv = lp.add_free_vars(dbc * da, 0.0);
  auto M = [&](int r, int col) { return mv[r * da + col]; };

  // Unitality.
  for (int col = 0; col < da; ++col)
    lp.add_eq({{M(dbc - 1, col), 1.0}}, col == da - 1 ? 1.0 : 0.0);
  // Marginal over C recovers c1: joint row (bi, last_C) equals c1 row bi.
  for (int bi = 0; bi < db; ++bi)
    for (int col = 0; col < da; ++col)
      lp.add_eq({{M(bi * dc + (dc - 1), col), 1.0}}, c1.matrix(bi, col));
  // Marginal over B recovers c2.
  for (int ci = 0; ci < dc; ++ci)
    for (int col = 0; col < da; ++col)
      lp.add_eq({{M((db - 1) * dc + ci, col), 1.0}}, c2.matrix(ci, col));
  // Every domain vertex must land in the chosen bipartite cone.
  std::vector<const StateSpace*> factors = {&b, &c};
  for (const Vector& x : c1.domain.vertices) {
    std::vector<int> y = lp.add_free_vars(dbc, 0.0);
    for (int r = 0; r < dbc; ++r) {
      LpBuilder::Terms row;
      row.push_back({y[r], 1.0});
      for (int col = 0; col < da; ++col)
        if (std::abs(x(col)) > 0.0) row.push_back({M(r, col), -x(col)});
      lp.add_eq(row, 0.0);
    }
    add_cone_membership(lp, y, factors, rule, dim_cap);
  }

  LpOutcome out = lp.solve(tol);
  ChannelCompatVerdict verdict;
  if (out.status == LpStatus::Optimal) {
    verdict.compatible = true;
    verdict.joint = Matrix(dbc, da);
    for (int r = 0; r < dbc; ++r)
      for (int col = 0; col < da; ++col) verdict.joint(r, col) = lp.value(out, M(r, col));
    return verdict;
  }
  require(out.status == LpStatus::Infeasible, Err::NumericalFailure,
          "channel compatibility LP neither solved nor certified infeasible");
  verdict.compatible = false;
  verdict.certificate = out.certificate;
  verdict.problem = lp.build();
  return verdict;
}

ChannelCompatVerdict broadcasting_feasible(const StateSpace& k,
                                           const std::vector<Vector>& fixed_set, TensorRule rule,
                                           double tol, int dim_cap) {
  const int d = k.lifted_dim;
  const int dkk = d * d;
  std::vector<Vector> fixed = fixed_set.empty() ? k.vertices : fixed_set;
  for (const Vector& x : fixed)
    require(contains(k, x, std::max(tol, kSignTol)), Err::NotAState,
            "broadcast fixed point is not a state");

  LpBuilder lp;
  std::vector<int> mv = lp.add_free_vars(dkk * d, 0.0);
  auto M = [&](int r, int col) { return mv[r * d + col]; };

  for (int col = 0; col < d; ++col)
    lp.add_eq({{M(dkk - 1, col), 1.0}}, col == d - 1 ? 1.0 : 0.0);
  // Both marginals fix every state in the fixed set.
  for (const Vector& x : fixed) {
    for (int bi = 0; bi < d; ++bi) {
      LpBuilder::Terms row;
      for (int col = 0; col < d; ++col)
        if (std::abs(x(col)) > 0.0) row.push_back({M(bi * d + (d - 1), col), x(col)});
      lp.add_eq(row, x(bi));
    }
    for (int ci = 0; ci < d; ++ci) {
      LpBuilder::Terms row;
      for (int col = 0; col < d; ++col)
        if (std::abs(x(col)) > 0.0) row.push_back({M((d - 1) * d + ci, col), x(col)});
      lp.add_eq(row, x(ci));
    }
  }
  // Positivity: vertex images in the bipartite cone of the rule.
  std::vector<const StateSpace*> factors = {&k, &k};
  for (const Vector& x : k.vertices) {
    std::vector<int> y = lp.add_free_vars(dkk, 0.0);
    for (int r = 0; r < dkk; ++r) {
      LpBuilder::Terms row;
      row.push_back({y[r], 1.0});
      for (int col = 0; col < d; ++col)
        if (std::abs(x(col)) > 0.0) row.push_back({M(r, col), -x(col)});
      lp.add_eq(row, 0.0);
    }
    add_cone_membership(lp, y, factors, rule, dim_cap);
  }

  LpOutcome out = lp.solve(tol);
  ChannelCompatVerdict verdict;
  if (out.status == LpStatus::Optimal) {
    verdict.compatible = true;
    verdict.joint = Matrix(dkk, d);
    for (int r = 0; r < dkk; ++r)
      for (int col = 0; col < d; ++col) verdict.joint(r, col) = lp.value(out, M(r, col));
    return verdict;
  }
  require(out.status == LpStatus::Infeasible, Err::NumericalFailure,
          "broadcast LP neither solved nor certified infeasible");
  verdict.compatible = false;
  verdict.certificate = out.certificate;
  verdict.problem = lp.build();
  return verdict;
}

bool certify_incompatibility(const Channel& c1, const Channel& c2,
                             const std::vector<Vector>& test_states, TensorRule rule, double tol,
                             int dim_cap) {
  require(same_space(c1.domain, c2.domain, kEqTol), Err::SpaceMismatch,
          "channels need a common domain");
  require(!test_states.empty(), Err::EmptyInput, "certification needs test states");
  const StateSpace& b = c1.codomain;
  const StateSpace& c = c2.codomain;
  const int db = b.lifted_dim;
  const int dc = c.lifted_dim;
  const int dbc = db * dc;
  const int n = static_cast<int>(test_states.size());
  const int da = c1.domain.lifted_dim;

  LpBuilder lp;
  std::vector<std::vector<int>> y(n);
  std::vector<const StateSpace*> factors = {&b, &c};
  for (int i = 0; i < n; ++i) {
    require(contains(c1.domain, test_states[i], std::max(tol, kSignTol)), Err::NotAState,
            "test state " + std::to_string(i) + " is not a state");
    y[i] = lp.add_free_vars(dbc, 0.0);
    Vector r1 = c1.matrix * test_states[i];
    Vector r2 = c2.matrix * test_states[i];
    for (int bi = 0; bi < db; ++bi) lp.add_eq({{y[i][bi * dc + (dc - 1)], 1.0}}, r1(bi));
    for (int ci = 0; ci < dc; ++ci) lp.add_eq({{y[i][(db - 1) * dc + ci], 1.0}}, r2(ci));
    add_cone_membership(lp, y[i], factors, rule, dim_cap);
  }
  // A joint channel acts linearly, so every affine dependence among the test
  // states must be inherited by the hypothetical joint outputs.
  Matrix xmat(da, n);
  for (int i = 0; i < n; ++i) xmat.col(i) = test_states[i];
  Matrix ns = null_space(xmat);
  for (int a = 0; a < ns.cols(); ++a) {
    for (int r = 0; r < dbc; ++r) {
      LpBuilder::Terms row;
      for (int i = 0; i < n; ++i)
        if (std::abs(ns(i, a)) > 1e-12) row.push_back({y[i][r], ns(i, a)});
      if (!row.empty()) lp.add_eq(row, 0.0);
    }
  }

  LpOutcome out = lp.solve(tol);
  if (out.status == LpStatus::Optimal) return false;
  require(out.status == LpStatus::Infeasible, Err::NumericalFailure,
          "certification LP neither solved nor certified infeasible");
  return true;
}

bool steering_check(const Channel& c1, const Channel& c2, const Vector& x_ad,
                    const StateSpace& d_space, TensorRule rule, double tol, int dim_cap) {
  require(same_space(c1.domain, c2.domain, kEqTol), Err::SpaceMismatch,
          "channels need a common domain");
  const StateSpace& a = c1.domain;
  const StateSpace& b = c1.codomain;
  const StateSpace& c = c2.codomain;
  const int da = a.lifted_dim, db = b.lifted_dim, dc = c.lifted_dim, dd = d_space.lifted_dim;
  require(max_tensor_contains(a, d_space, x_ad, std::max(tol, kEqTol)), Err::NotAState,
          "shared state is not even in the max tensor product");
  Matrix x = as_matrix(x_ad, da, dd);
  Matrix r1 = c1.matrix * x;  // db x dd
  Matrix r2 = c2.matrix * x;  // dc x dd

  LpBuilder lp;
  std::vector<int> y = lp.add_free_vars(db * dc * dd, 0.0);
  auto Y = [&](int bi, int ci, int di) { return y[(bi * dc + ci) * dd + di]; };
  for (int bi = 0; bi < db; ++bi)
    for (int di = 0; di < dd; ++di) lp.add_eq({{Y(bi, dc - 1, di), 1.0}}, r1(bi, di));
  for (int ci = 0; ci < dc; ++ci)
    for (int di = 0; di < dd; ++di) lp.add_eq({{Y(db - 1, ci, di), 1.0}}, r2(ci, di));
  std::vector<const StateSpace*> factors = {&b, &c, &d_space};
  add_cone_membership(lp, y, factors, rule, dim_cap);

  LpOutcome out = lp.solve(tol);
  if (out.status == LpStatus::Optimal) return false;
  require(out.status == LpStatus::Infeasible, Err::NumericalFailure,
          "steering LP neither solved nor certified infeasible");
  return true;
}

bool bell_check(const Channel& c1, const Channel& c2, const Channel& e1, const Channel& e2,
                const Vector& x_ad, TensorRule rule, double tol, int dim_cap) {
  require(same_space(c1.domain, c2.domain, kEqTol) && same_space(e1.domain, e2.domain, kEqTol),
          Err::SpaceMismatch, "each side needs a common domain");
  const StateSpace& a = c1.domain;
  const StateSpace& dsp = e1.domain;
  const StateSpace& b = c1.codomain;
  const StateSpace& c = c2.codomain;
  const StateSpace& e = e1.codomain;
  const StateSpace& f = e2.codomain;
  const int da = a.lifted_dim, ddim = dsp.lifted_dim;
  const int db = b.lifted_dim, dc = c.lifted_dim, de = e.lifted_dim, df = f.lifted_dim;
  require(static_cast<long>(db) * dc * de * df <= 4096, Err::DimensionTooLarge,
          "four-partite feasibility problem is too large");
  Matrix x = as_matrix(x_ad, da, ddim);
  Matrix r11 = c1.matrix * x * e1.matrix.transpose();  // db x de
  Matrix r12 = c1.matrix * x * e2.matrix.transpose();  // db x df
  Matrix r21 = c2.matrix * x * e1.matrix.transpose();  // dc x de
  Matrix r22 = c2.matrix * x * e2.matrix.transpose();  // dc x df

  LpBuilder lp;
  std::vector<int> y = lp.add_free_vars(db * dc * de * df, 0.0);
  auto Y = [&](int bi, int ci, int ei, int fi) {
    return y[((bi * dc + ci) * de + ei) * df + fi];
  };
  for (int bi = 0; bi < db; ++bi)
    for (int ei = 0; ei < de; ++ei) lp.add_eq({{Y(bi, dc - 1, ei, df - 1), 1.0}}, r11(bi, ei));
  for (int bi = 0; bi < db; ++bi)
    for (int fi = 0; fi < df; ++fi) lp.add_eq({{Y(bi, dc - 1, de - 1, fi), 1.0}}, r12(bi, fi));
  for (int ci = 0; ci < dc; ++ci)
    for (int ei = 0; ei < de; ++ei) lp.add_eq({{Y(db - 1, ci, ei, df - 1), 1.0}}, r21(ci, ei));
  for (int ci = 0; ci < dc; ++ci)
    for (int fi = 0; fi < df; ++fi) lp.add_eq({{Y(db - 1, ci, de - 1, fi), 1.0}}, r22(ci, fi));
  std::vector<const StateSpace*> factors = {&b, &c, &e, &f};
  add_cone_membership(lp, y, factors, rule, dim_cap);

  LpOutcome out = lp.solve(tol);
  if (out.status == LpStatus::Optimal) return false;
  require(out.status == LpStatus::Infeasible, Err::NumericalFailure,
          "bell LP neither solved nor certified infeasible");
  return true;
}

}  // namespace gpt
