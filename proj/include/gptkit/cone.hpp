#pragma once

#include <vector>

#include "gptkit/types.hpp"

namespace gpt {

// Polyhedral cone, V-representation (extreme rays) and/or H-representation
// (inequality normals: v lies in the cone iff facet.dot(v) >= 0 for every
// facet). Rays and facets are stored normalized to unit max-norm.
struct ConeRep {
  std::vector<Vector> generators;
  std::vector<Vector> facets;
};

// Enumeration above this ambient dimension is refused; callers may raise it.
inline constexpr int kDefaultDimCap = 10;

// Extreme rays of { v : row.dot(v) >= 0 for all rows }. The stacked rows
// must have full column rank (pointed cone). Incremental double-description,
// constraints processed in input order, adjacency decided by rank.
std::vector<Vector> extreme_rays(const std::vector<Vector>& rows, int dim_cap = kDefaultDimCap);
std::vector<Vector> extreme_rays(const Matrix& rows, int dim_cap = kDefaultDimCap);

// Fills in whichever representation is missing and prunes both down to the
// irredundant extreme sets. Cones that are not full-dimensional are handled
// by enumerating inside their linear span.
ConeRep double_description(const ConeRep& input, int dim_cap = kDefaultDimCap);

// Dual cone C* = { a : a.dot(v) >= 0 for all v in C } of a generated cone,
// taken within the linear span of the generators.
ConeRep dual_cone(const ConeRep& c, int dim_cap = kDefaultDimCap);

// Membership of v in cone(generators), decided by LP feasibility.
bool cone_contains(const ConeRep& c, const Vector& v, double tol = kSignTol);

struct Separator {
  Vector normal;
  double offset;  // f(v) = normal.dot(v) + offset
};

// Strict affine separator: f < 0 on every vertex, f(y) > 0, both margins
// maximized subject to |normal|_inf <= 1. Throws NotSeparable when y lies
// in the hull.
Separator separating_functional(const std::vector<Vector>& polytope_vertices, const Vector& y,
                                double tol = kSignTol);

// Kronecker product, index convention (i, j) -> i * len(v) + j.
Vector kron(const Vector& u, const Vector& v);
Matrix kron(const Matrix& a, const Matrix& b);

// Rank with a relative singular-value cutoff (1e-8 by default).
int numeric_rank(const Matrix& m, double rel_tol = 1e-8);

// Orthonormal basis of the row space of m, returned as columns.
Matrix row_space_basis(const Matrix& m, double rel_tol = 1e-8);

// Basis of { a : m a = 0 }, returned as columns.
Matrix null_space(const Matrix& m, double rel_tol = 1e-8);

Matrix stack_rows(const std::vector<Vector>& rows);

// Dedup up to positive scaling: normalizes to unit max-norm and drops
// vectors within 1e-7 in max norm of an earlier one.
std::vector<Vector> dedup_rays(const std::vector<Vector>& rays, double tol = kEqTol);

}  // namespace gpt
