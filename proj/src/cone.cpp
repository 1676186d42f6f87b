#include "gptkit/cone.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "gptkit/lp.hpp"

namespace gpt {

namespace {

constexpr double kTightTol = 1e-8;

Vector normalized_ray(const Vector& v) {
  double m = v.cwiseAbs().maxCoeff();
  return v / m;
}

}  // namespace

Matrix stack_rows(const std::vector<Vector>& rows) {
  require(!rows.empty(), Err::EmptyInput, "stack_rows: empty list");
  Matrix m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == m.cols(), Err::DimensionMismatch, "stack_rows: ragged rows");
    m.row(i) = rows[i];
  }
  return m;
}

int numeric_rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  double top = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  if (top <= 0.0) return 0;
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > rel_tol * top) ++r;
  }
  return r;
}

Matrix row_space_basis(const Matrix& m, double rel_tol) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  int r = numeric_rank(m, rel_tol);
  return svd.matrixV().leftCols(r);
}

Matrix null_space(const Matrix& m, double rel_tol) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  int r = numeric_rank(m, rel_tol);
  return svd.matrixV().rightCols(m.cols() - r);
}

std::vector<Vector> dedup_rays(const std::vector<Vector>& rays, double tol) {
  std::vector<Vector> out;
  for (const Vector& r : rays) {
    if (r.cwiseAbs().maxCoeff() < tol) continue;
    Vector n = normalized_ray(r);
    bool dup = false;
    for (const Vector& o : out) {
      if ((n - o).cwiseAbs().maxCoeff() < tol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(n);
  }
  return out;
}

std::vector<Vector> extreme_rays(const Matrix& rows, int dim_cap) {
  std::vector<Vector> rs;
  rs.reserve(rows.rows());
  for (int i = 0; i < rows.rows(); ++i) rs.push_back(rows.row(i).transpose());
  return extreme_rays(rs, dim_cap);
}

std::vector<Vector> extreme_rays(const std::vector<Vector>& rows, int dim_cap) {
  require(!rows.empty(), Err::EmptyInput, "extreme_rays: no constraints");
  const int d = static_cast<int>(rows[0].size());
  require(d <= dim_cap, Err::DimensionTooLarge,
          "extreme_rays: ambient dimension " + std::to_string(d) + " above cap");

  std::vector<Vector> norm;
  norm.reserve(rows.size());
  for (const Vector& r : rows) {
    if (r.cwiseAbs().maxCoeff() <= kSignTol) continue;  // trivial constraint
    norm.push_back(normalized_ray(r));
  }
  require(!norm.empty(), Err::DegenerateCone, "extreme_rays: all constraints are trivial");

  Matrix all = stack_rows(norm);
  require(numeric_rank(all) == d, Err::DegenerateCone,
          "extreme_rays: constraint rows do not have full rank (cone contains a line)");

  // Greedy full-rank starting subset; its simplicial cone has the inverse's
  // columns as rays.
  std::vector<int> initial;
  Matrix sel(0, d);
  for (size_t i = 0; i < norm.size() && static_cast<int>(initial.size()) < d; ++i) {
    Matrix cand(sel.rows() + 1, d);
    cand << sel, norm[i].transpose();
    if (numeric_rank(cand) == cand.rows()) {
      sel = cand;
      initial.push_back(static_cast<int>(i));
    }
  }
  Matrix inv = sel.inverse();
  std::vector<Vector> rays;
  for (int j = 0; j < d; ++j) rays.push_back(normalized_ray(inv.col(j)));

  std::vector<int> processed = initial;
  for (size_t k = 0; k < norm.size(); ++k) {
    if (std::find(initial.begin(), initial.end(), static_cast<int>(k)) != initial.end()) continue;
    const Vector& a = norm[k];
    std::vector<Vector> pos, zero, neg;
    std::vector<double> spos, sneg;
    for (const Vector& r : rays) {
      double s = a.dot(r);
      if (s > kTightTol) {
        pos.push_back(r);
        spos.push_back(s);
      } else if (s < -kTightTol) {
        neg.push_back(r);
        sneg.push_back(s);
      } else {
        zero.push_back(r);
      }
    }
    if (!neg.empty()) {
      std::vector<Vector> fresh;
      for (size_t ip = 0; ip < pos.size(); ++ip) {
        for (size_t in = 0; in < neg.size(); ++in) {
          // Adjacency by rank: constraints tight at both rays span d-2 dims.
          std::vector<Vector> tight;
          for (int idx : processed) {
            if (std::abs(norm[idx].dot(pos[ip])) <= kTightTol &&
                std::abs(norm[idx].dot(neg[in])) <= kTightTol) {
              tight.push_back(norm[idx]);
            }
          }
          int rk = tight.empty() ? 0 : numeric_rank(stack_rows(tight));
          if (rk != d - 2) continue;
          fresh.push_back(normalized_ray(spos[ip] * neg[in] - sneg[in] * pos[ip]));
        }
      }
      rays.clear();
      rays.insert(rays.end(), pos.begin(), pos.end());
      rays.insert(rays.end(), zero.begin(), zero.end());
      rays.insert(rays.end(), fresh.begin(), fresh.end());
      rays = dedup_rays(rays);
    }
    processed.push_back(static_cast<int>(k));
  }
  return dedup_rays(rays);
}

namespace {

// Enumeration for a full-dimensional cone; returns both irredundant reps.
ConeRep enumerate_full_dim(const std::vector<Vector>& generators, int dim_cap) {
  ConeRep out;
  out.facets = extreme_rays(generators, dim_cap);
  out.generators = extreme_rays(out.facets, dim_cap);
  return out;
}

}  // namespace

ConeRep double_description(const ConeRep& input, int dim_cap) {
  if (!input.generators.empty()) {
    for (const Vector& g : input.generators) {
      require(all_finite(g), Err::NonFinite, "double_description: non-finite generator");
    }
    std::vector<Vector> gens = dedup_rays(input.generators);
    require(!gens.empty(), Err::DegenerateCone, "double_description: zero cone");
    const int d = static_cast<int>(gens[0].size());
    Matrix g = stack_rows(gens);
    int r = numeric_rank(g);
    require(r > 0, Err::DegenerateCone, "double_description: span is zero");
    if (r == d) return enumerate_full_dim(gens, dim_cap);
    // Not full-dimensional: enumerate inside the linear span, lift back.
    Matrix q = row_space_basis(g);  // d x r, orthonormal columns
    std::vector<Vector> proj;
    for (const Vector& v : gens) proj.push_back(q.transpose() * v);
    ConeRep inner = enumerate_full_dim(dedup_rays(proj), dim_cap);
    ConeRep out;
    for (const Vector& v : inner.generators) out.generators.push_back(normalized_ray(q * v));
    for (const Vector& f : inner.facets) out.facets.push_back(normalized_ray(q * f));
    return out;
  }
  require(!input.facets.empty(), Err::EmptyInput, "double_description: no representation given");
  ConeRep out;
  out.generators = extreme_rays(input.facets, dim_cap);
  require(!out.generators.empty(), Err::DegenerateCone, "double_description: empty cone");
  Matrix g = stack_rows(out.generators);
  if (numeric_rank(g) == g.cols()) {
    out.facets = extreme_rays(out.generators, dim_cap);
  } else {
    out.facets = dedup_rays(input.facets);  // cannot canonicalize facets of a flat cone
  }
  return out;
}

ConeRep dual_cone(const ConeRep& c, int dim_cap) {
  require(!c.generators.empty(), Err::EmptyInput, "dual_cone: generators required");
  ConeRep dd = double_description(c, dim_cap);
  return ConeRep{dd.facets, dd.generators};
}

bool cone_contains(const ConeRep& c, const Vector& v, double tol) {
  require(!c.generators.empty(), Err::EmptyInput, "cone_contains: generators required");
  require(v.size() == c.generators[0].size(), Err::DimensionMismatch,
          "cone_contains: dimension mismatch");
  LpBuilder lp;
  auto lambda = lp.add_vars(static_cast<int>(c.generators.size()));
  for (int i = 0; i < v.size(); ++i) {
    LpBuilder::Terms t;
    for (size_t g = 0; g < c.generators.size(); ++g) t.push_back({lambda[g], c.generators[g](i)});
    lp.add_eq(t, v(i));
  }
  return lp.solve(tol).status == LpStatus::Optimal;
}

Separator separating_functional(const std::vector<Vector>& polytope_vertices, const Vector& y,
                                double tol) {
  require(!polytope_vertices.empty(), Err::EmptyInput, "separating_functional: no vertices");
  const int d = static_cast<int>(y.size());
  require(polytope_vertices[0].size() == d, Err::DimensionMismatch,
          "separating_functional: dimension mismatch");
  LpBuilder lp;
  auto a = lp.add_free_vars(d);
  int beta = lp.add_free_var();
  int margin = lp.add_var(-1.0);  // maximize the margin
  for (const Vector& v : polytope_vertices) {
    LpBuilder::Terms t;
    for (int i = 0; i < d; ++i) t.push_back({a[i], v(i)});
    t.push_back({beta, 1.0});
    t.push_back({margin, 1.0});
    lp.add_le(t, 0.0);  // a.v + beta <= -margin
  }
  {
    LpBuilder::Terms t;
    for (int i = 0; i < d; ++i) t.push_back({a[i], y(i)});
    t.push_back({beta, 1.0});
    t.push_back({margin, -1.0});
    lp.add_ge(t, 0.0);  // a.y + beta >= margin
  }
  for (int i = 0; i < d; ++i) {
    lp.add_le({{a[i], 1.0}}, 1.0);
    lp.add_ge({{a[i], 1.0}}, -1.0);
  }
  LpOutcome out = lp.solve(tol);
  require(out.status == LpStatus::Optimal, Err::NumericalFailure,
          "separating_functional: margin LP did not solve");
  double m = lp.value(out, margin);
  if (m <= tol) throw Error(Err::NotSeparable, "separating_functional: point lies in the hull");
  Separator s;
  s.normal = lp.values(out, a);
  s.offset = lp.value(out, beta);
  return s;
}

Vector kron(const Vector& u, const Vector& v) {
  Vector out(u.size() * v.size());
  for (int i = 0; i < u.size(); ++i) {
    for (int j = 0; j < v.size(); ++j) out(i * v.size() + j) = u(i) * v(j);
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace gpt
