#include "gptkit/state_space.hpp"

#include <algorithm>
#include <cmath>

#include "gptkit/cone.hpp"
#include "gptkit/lp.hpp"

namespace gpt {

namespace {

// Is p a convex combination of the given lifted points?  The last coordinate
// forces the weights to sum to p's last entry, so we add the sum-to-one row
// explicitly to reject sub- and super-normalized inputs.
bool in_convex_hull(const std::vector<Vector>& points, const Vector& p, double tol) {
  if (points.empty()) return false;
  const int d = static_cast<int>(p.size());
  LpBuilder lp;
  std::vector<int> lam = lp.add_vars(static_cast<int>(points.size()), 0.0);
  for (int c = 0; c < d; ++c) {
    LpBuilder::Terms row;
    for (size_t i = 0; i < points.size(); ++i) row.push_back({lam[i], points[i](c)});
    lp.add_eq(row, p(c));
  }
  LpBuilder::Terms ones;
  for (int v : lam) ones.push_back({v, 1.0});
  lp.add_eq(ones, 1.0);
  return lp.solve(tol).status == LpStatus::Optimal;
}

}  // namespace

StateSpace from_lifted_vertices(std::vector<Vector> lifted, const std::string& name) {
  require(!lifted.empty(), Err::EmptyInput, "state space needs at least one vertex");
  const int d = static_cast<int>(lifted[0].size());
  for (const Vector& v : lifted) {
    require(static_cast<int>(v.size()) == d, Err::DimensionMismatch, "inconsistent vertex dimensions");
    require(all_finite(v), Err::NonFinite, "vertex has non-finite entries");
    require(std::abs(v(d - 1) - 1.0) <= kEqTol, Err::MalformedProblem,
            "lifted vertex must end in 1");
  }
  // Dedup by distance, then drop points expressible as convex combinations of
  // the others.
  std::vector<Vector> uniq;
  for (const Vector& v : lifted) {
    bool seen = false;
    for (const Vector& u : uniq)
      if ((u - v).lpNorm<Eigen::Infinity>() <= kEqTol) { seen = true; break; }
    if (!seen) uniq.push_back(v);
  }
  std::vector<bool> keep(uniq.size(), true);
  for (size_t i = 0; i < uniq.size(); ++i) {
    std::vector<Vector> others;
    for (size_t j = 0; j < uniq.size(); ++j)
      if (j != i && keep[j]) others.push_back(uniq[j]);
    if (!others.empty() && in_convex_hull(others, uniq[i], kSignTol)) keep[i] = false;
  }
  StateSpace out;
  out.name = name;
  out.lifted_dim = d;
  for (size_t i = 0; i < uniq.size(); ++i)
    if (keep[i]) out.vertices.push_back(uniq[i]);
  return out;
}

StateSpace from_vertices(const std::vector<Vector>& raw_points, const std::string& name) {
  require(!raw_points.empty(), Err::EmptyInput, "state space needs at least one point");
  std::vector<Vector> lifted;
  lifted.reserve(raw_points.size());
  for (const Vector& p : raw_points) {
    Vector v(p.size() + 1);
    v.head(p.size()) = p;
    v(p.size()) = 1.0;
    lifted.push_back(v);
  }
  return from_lifted_vertices(std::move(lifted), name);
}

StateSpace simplex(int n) {
  require(n >= 1, Err::MalformedProblem, "simplex needs at least one vertex");
  StateSpace out;
  out.name = "simplex(" + std::to_string(n) + ")";
  out.lifted_dim = n;
  Vector s1 = Vector::Zero(n);
  s1(n - 1) = 1.0;
  out.vertices.push_back(s1);
  for (int i = 2; i <= n; ++i) {
    Vector s = Vector::Zero(n);
    s(i - 2) = 1.0;
    s(n - 1) = 1.0;
    out.vertices.push_back(s);
  }
  return out;
}

StateSpace boxworld_square() {
  StateSpace out;
  out.name = "square";
  out.lifted_dim = 3;
  out.vertices = {to_vector({0, 0, 1}), to_vector({1, 0, 1}),
                  to_vector({0, 1, 1}), to_vector({1, 1, 1})};
  return out;
}

StateSpace regular_polygon(int k) {
  require(k >= 3, Err::MalformedProblem, "polygon needs at least three vertices");
  StateSpace out;
  out.name = "polygon(" + std::to_string(k) + ")";
  out.lifted_dim = 3;
  const double pi = std::acos(-1.0);
  for (int j = 0; j < k; ++j) {
    double th = 2.0 * pi * j / k;
    out.vertices.push_back(to_vector({std::cos(th), std::sin(th), 1.0}));
  }
  return out;
}

Vector unit_effect(const StateSpace& k) {
  Vector u = Vector::Zero(k.lifted_dim);
  u(k.lifted_dim - 1) = 1.0;
  return u;
}

Vector barycenter(const StateSpace& k) {
  Vector b = Vector::Zero(k.lifted_dim);
  for (const Vector& v : k.vertices) b += v;
  return b / static_cast<double>(k.vertices.size());
}

bool contains(const StateSpace& k, const Functional& phi, double tol) {
  require(static_cast<int>(phi.size()) == k.lifted_dim, Err::DimensionMismatch,
          "functional dimension does not match state space");
  require(all_finite(phi), Err::NonFinite, "functional has non-finite entries");
  return in_convex_hull(k.vertices, phi, tol);
}

bool is_pure(const StateSpace& k, const Functional& phi, double tol) {
  if (!contains(k, phi, tol)) return false;
  for (const Vector& v : k.vertices)
    if ((v - phi).lpNorm<Eigen::Infinity>() <= tol) return true;
  return false;
}

bool in_relative_interior(const StateSpace& k, const Functional& phi, double tol) {
  if (!contains(k, phi, tol)) return false;
  // phi is interior relative to the affine hull iff the segment from each
  // vertex through phi can be extended strictly past phi while staying in K:
  // maximize mu with (1-mu) y + mu phi in K, require mu* > 1.
  for (const Vector& y : k.vertices) {
    LpBuilder lp;
    std::vector<int> lam = lp.add_vars(static_cast<int>(k.vertices.size()), 0.0);
    int mu = lp.add_var(-1.0);  // maximize mu
    for (int c = 0; c < k.lifted_dim; ++c) {
      LpBuilder::Terms row;
      for (size_t i = 0; i < k.vertices.size(); ++i) row.push_back({lam[i], k.vertices[i](c)});
      row.push_back({mu, y(c) - phi(c)});
      lp.add_eq(row, y(c));
    }
    LpOutcome out = lp.solve(tol);
    if (out.status == LpStatus::Unbounded) continue;
    if (out.status != LpStatus::Optimal) return false;
    if (-out.value <= 1.0 + tol) return false;
  }
  return true;
}

bool is_simplex(const StateSpace& k) {
  const size_t n = k.vertices.size();
  if (n <= 1) return true;
  Matrix diffs(n - 1, k.lifted_dim);
  for (size_t i = 1; i < n; ++i) diffs.row(i - 1) = (k.vertices[i] - k.vertices[0]).transpose();
  return numeric_rank(diffs) == static_cast<int>(n) - 1;
}

bool same_space(const StateSpace& a, const StateSpace& b, double tol) {
  if (a.lifted_dim != b.lifted_dim) return false;
  if (a.vertices.size() != b.vertices.size()) return false;
  for (const Vector& v : a.vertices) {
    bool found = false;
    for (const Vector& w : b.vertices)
      if ((v - w).lpNorm<Eigen::Infinity>() <= tol) { found = true; break; }
    if (!found) return false;
  }
  return true;
}

}  // namespace gpt
