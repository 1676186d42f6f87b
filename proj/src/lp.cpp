#include "gptkit/lp.hpp"

#include <cmath>
#include <limits>

namespace gpt {

namespace {

constexpr int kMaxPivots = 200000;
constexpr double kPivotTol = 1e-10;

// Dense tableau simplex over [A | I | b] with artificial columns kept for
// the whole run so that B^{-1} information stays readable off the tableau.
struct Tableau {
  int m, n;  // constraint rows, original columns
  Matrix T;  // m x (n + m + 1), last column is the rhs
  std::vector<int> basis;
  std::vector<char> in_basis;  // per-column flag; basic columns never re-enter
  std::vector<bool> active;    // redundant rows get switched off after phase 1
  Eigen::RowVectorXd red;      // reduced costs over n + m columns
  double obj = 0.0;

  void pivot(int r, int s) {
    T.row(r) /= T(r, s);
    for (int i = 0; i < m; ++i) {
      if (i == r || !active[i]) continue;
      double f = T(i, s);
      if (f != 0.0) T.row(i) -= f * T.row(r);
    }
    double f = red(s);
    if (f != 0.0) {
      red -= f * T.row(r).head(n + m);
      obj -= f * T(r, n + m);
    }
    in_basis[basis[r]] = 0;
    in_basis[s] = 1;
    basis[r] = s;
  }

  // Bland's rule: lowest-index eligible entering column, leaving row by
  // minimum ratio with ties broken by lowest basis index.
  // Returns 0 on optimal, 1 on pivot done, -1 on unbounded.
  int step(int limit_cols, double tol) {
    int s = -1;
    for (int j = 0; j < limit_cols; ++j) {
      if (!in_basis[j] && red(j) < -tol) {
        s = j;
        break;
      }
    }
    if (s < 0) return 0;
    int r = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (!active[i] || T(i, s) <= kPivotTol) continue;
      double ratio = T(i, n + m) / T(i, s);
      // Near-ties go to the largest pivot element; a tiny pivot wrecks the
      // conditioning of the basis in degenerate problems.
      if (r < 0 || ratio < best - kPivotTol ||
          (ratio < best + kPivotTol && T(i, s) > T(r, s))) {
        best = std::min(ratio, best);
        r = i;
      }
    }
    if (r < 0) return -1;
    pivot(r, s);
    return 1;
  }
};

}  // namespace

LpOutcome lp_solve(const LpProblem& p, double tol) {
  const int m = static_cast<int>(p.A.rows());
  const int n = static_cast<int>(p.A.cols());
  require(p.c.size() == n && p.b.size() == m, Err::MalformedProblem,
          "lp_solve: dimension mismatch between c, A, b");
  require(all_finite(p.A) && all_finite(p.b) && all_finite(p.c), Err::MalformedProblem,
          "lp_solve: non-finite input");

  Tableau t;
  t.m = m;
  t.n = n;
  t.T.setZero(m, n + m + 1);
  t.basis.resize(m);
  t.in_basis.assign(n + m, 0);
  for (int i = 0; i < m; ++i) t.in_basis[n + i] = 1;
  t.active.assign(m, true);
  std::vector<double> flip(m, 1.0);
  for (int i = 0; i < m; ++i) {
    double s = p.b(i) < 0.0 ? -1.0 : 1.0;
    flip[i] = s;
    t.T.block(i, 0, 1, n) = s * p.A.row(i);
    t.T(i, n + i) = 1.0;
    t.T(i, n + m) = s * p.b(i);
    t.basis[i] = n + i;
  }

  const Matrix T0 = t.T;  // pristine row data for refactorization

  // Refactorize against the original data: rebuild the tableau, duals and
  // reduced costs exactly for the current basis. The incremental updates in
  // pivot() drift after near-degenerate pivots, so each phase only accepts
  // termination once a refactorized pricing pass confirms it.
  auto refresh = [&](bool phase1) {
    Matrix basis_cols = Matrix::Zero(m, m);
    Vector cb = Vector::Zero(m);
    for (int i = 0; i < m; ++i) {
      int j = t.basis[i];
      basis_cols.col(i) = T0.col(j);
      if (phase1)
        cb(i) = j >= n ? 1.0 : 0.0;
      else
        cb(i) = j < n ? p.c(j) : 0.0;
    }
    auto lu = basis_cols.partialPivLu();
    t.T = lu.solve(T0);
    Vector y = basis_cols.transpose().partialPivLu().solve(cb);
    for (int j = 0; j < n + m; ++j) {
      double cj = phase1 ? (j >= n ? 1.0 : 0.0) : (j < n ? p.c(j) : 0.0);
      t.red(j) = cj - y.dot(T0.col(j));
    }
    t.obj = 0.0;
    for (int i = 0; i < m; ++i) t.obj -= cb(i) * t.T(i, n + m);
    require(t.T.allFinite() && t.red.allFinite(), Err::NumericalFailure,
            "lp_solve: refactorization hit a singular basis");
  };

  // Phase 1: minimize the sum of artificials. Reduced costs priced out
  // against the all-artificial starting basis.
  t.red.setZero(n + m);
  t.obj = 0.0;
  for (int j = 0; j < n; ++j) t.red(j) = -t.T.col(j).sum();
  for (int i = 0; i < m; ++i) t.obj -= t.T(i, n + m);

  int pivots = 0;
  bool fresh = false;
  while (true) {
    int rc = t.step(n, tol);  // artificials never re-enter
    if (rc != 1) {
      // Phase 1 is bounded below by zero, so an unbounded verdict can only
      // come from a drifted tableau; refactorize before trusting either exit.
      if (fresh) {
        require(rc != -1, Err::NumericalFailure, "lp_solve: phase 1 lost feasibility");
        break;
      }
      refresh(true);
      fresh = true;
      continue;
    }
    fresh = false;
    require(++pivots < kMaxPivots, Err::NumericalFailure, "lp_solve: pivot limit exceeded");
  }

  double scale = 1.0 + p.b.cwiseAbs().maxCoeff();
  if (-t.obj > tol * scale) {
    // Farkas certificate off the phase-1 reduced costs of the artificial
    // columns: red(n+i) = 1 - y_i in the row-flipped frame.
    LpOutcome out;
    out.status = LpStatus::Infeasible;
    out.certificate.resize(m);
    for (int i = 0; i < m; ++i) out.certificate(i) = flip[i] * (1.0 - t.red(n + i));
    return out;
  }

  // Drive leftover artificials out of the basis; rows that cannot release
  // one are redundant and get deactivated.
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) continue;
    int s = -1;
    for (int j = 0; j < n; ++j) {
      if (!t.in_basis[j] && std::abs(t.T(i, j)) > 1e-8 &&
          (s < 0 || std::abs(t.T(i, j)) > std::abs(t.T(i, s)))) {
        s = j;
      }
    }
    if (s >= 0) {
      t.pivot(i, s);
    } else {
      t.active[i] = false;
    }
  }

  // Phase 2 objective row.
  t.red.setZero(n + m);
  t.red.head(n) = p.c.transpose();
  t.obj = 0.0;
  for (int i = 0; i < m; ++i) {
    if (!t.active[i] || t.basis[i] >= n) continue;
    double cb = p.c(t.basis[i]);
    if (cb != 0.0) {
      t.red -= cb * t.T.row(i).head(n + m);
      t.obj -= cb * t.T(i, n + m);
    }
  }

  fresh = false;
  while (true) {
    int rc = t.step(n, tol);
    if (rc == 0) {
      if (fresh) break;
      refresh(false);
      fresh = true;
      continue;
    }
    fresh = false;
    if (rc == -1) {
      LpOutcome out;
      out.status = LpStatus::Unbounded;
      return out;
    }
    require(++pivots < kMaxPivots, Err::NumericalFailure, "lp_solve: pivot limit exceeded");
  }

  LpOutcome out;
  out.status = LpStatus::Optimal;
  out.point.setZero(n);
  for (int i = 0; i < m; ++i) {
    if (t.active[i] && t.basis[i] < n) out.point(t.basis[i]) = t.T(i, n + m);
  }
  out.value = p.c.dot(out.point);
  return out;
}

int LpBuilder::add_var(double cost) {
  vars_.push_back({cost, false});
  return static_cast<int>(vars_.size()) - 1;
}

int LpBuilder::add_free_var(double cost) {
  vars_.push_back({cost, true});
  return static_cast<int>(vars_.size()) - 1;
}

std::vector<int> LpBuilder::add_vars(int count, double cost) {
  std::vector<int> ids(count);
  for (int i = 0; i < count; ++i) ids[i] = add_var(cost);
  return ids;
}

std::vector<int> LpBuilder::add_free_vars(int count, double cost) {
  std::vector<int> ids(count);
  for (int i = 0; i < count; ++i) ids[i] = add_free_var(cost);
  return ids;
}

void LpBuilder::add_eq(const Terms& terms, double rhs) { rows_.push_back({terms, rhs, 0}); }
void LpBuilder::add_ge(const Terms& terms, double rhs) { rows_.push_back({terms, rhs, 1}); }
void LpBuilder::add_le(const Terms& terms, double rhs) { rows_.push_back({terms, rhs, -1}); }

LpProblem LpBuilder::build() const {
  // Column layout: per-variable columns first (two for free variables),
  // then one slack/surplus column per inequality row.
  std::vector<int> col_of(vars_.size());
  int ncols = 0;
  for (size_t v = 0; v < vars_.size(); ++v) {
    col_of[v] = ncols;
    ncols += vars_[v].free ? 2 : 1;
  }
  int nslack = 0;
  for (const Row& r : rows_) {
    if (r.relation != 0) ++nslack;
  }
  const int total = ncols + nslack;
  const int m = static_cast<int>(rows_.size());

  LpProblem p;
  p.A.setZero(m, total);
  p.b.setZero(m);
  p.c.setZero(total);
  for (size_t v = 0; v < vars_.size(); ++v) {
    p.c(col_of[v]) = vars_[v].cost;
    if (vars_[v].free) p.c(col_of[v] + 1) = -vars_[v].cost;
  }
  int slack = ncols;
  for (int i = 0; i < m; ++i) {
    const Row& r = rows_[i];
    for (const auto& [v, coef] : r.terms) {
      p.A(i, col_of[v]) += coef;
      if (vars_[v].free) p.A(i, col_of[v] + 1) -= coef;
    }
    p.b(i) = r.rhs;
    if (r.relation != 0) p.A(i, slack++) = r.relation > 0 ? -1.0 : 1.0;
  }
  return p;
}

LpOutcome LpBuilder::solve(double tol) const { return lp_solve(build(), tol); }

double LpBuilder::value(const LpOutcome& out, int var) const {
  int col = 0;
  for (int v = 0; v < var; ++v) col += vars_[v].free ? 2 : 1;
  double x = out.point(col);
  if (vars_[var].free) x -= out.point(col + 1);
  return x;
}

Vector LpBuilder::values(const LpOutcome& out, const std::vector<int>& vars) const {
  Vector v(vars.size());
  for (size_t i = 0; i < vars.size(); ++i) v(i) = value(out, vars[i]);
  return v;
}

}  // namespace gpt
