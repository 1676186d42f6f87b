#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gptkit/cone.hpp"
#include "gptkit/effects.hpp"
#include "gptkit/state_space.hpp"
#include "gptkit/types.hpp"

namespace gpt {

enum class TensorRule { Min, Max, Explicit };

enum class Leg { A, B };

// A choice of bipartite state set between min and max for a fixed pair of
// marginal spaces.  Explicit rules carry their own vertex list and are
// checked to sit inside the sandwich on construction.
struct BipartiteContext {
  StateSpace a, b;
  TensorRule rule = TensorRule::Min;
  std::vector<Vector> explicit_vertices;
};

BipartiteContext make_context(StateSpace a, StateSpace b, TensorRule rule);
BipartiteContext make_explicit_context(StateSpace a, StateSpace b,
                                       std::vector<Vector> vertices, double tol = kSignTol);

// Convex hull of product states; vertices are exactly the pairwise Kronecker
// products of marginal vertices.
StateSpace min_tensor(const StateSpace& a, const StateSpace& b);

// Generators of A(A)^+ tensor A(B)^+ whose nonnegativity cuts out the max
// tensor product.
std::vector<Vector> product_generators(const StateSpace& a, const StateSpace& b,
                                       int dim_cap = kDefaultDimCap);

bool max_tensor_contains(const StateSpace& a, const StateSpace& b, const Vector& phi,
                         double tol = kSignTol);

// Explicit vertex enumeration of the max tensor state set.
StateSpace max_tensor_vertices(const StateSpace& a, const StateSpace& b,
                               int dim_cap = kDefaultDimCap);

bool context_contains(const BipartiteContext& ctx, const Vector& phi, double tol = kSignTol);

struct SeparabilityResult {
  bool separable = false;
  // On success: convex weights over the product vertices of min_tensor(a,b).
  Vector coefficients;
  // On failure: lifted entanglement witness w with <w, product vertex> >= 0
  // for every product vertex and <w, phi> == -1.
  Vector witness;
};

SeparabilityResult is_separable(const StateSpace& a, const StateSpace& b, const Vector& phi,
                                double tol = kSignTol);

// Contract one leg of a bipartite vector with a functional on that leg.
Vector partial_contract(int dim_a, int dim_b, const Vector& phi, const Vector& f, Leg leg);

// Post-measurement pair (probability, conditional state on the other leg)
// after seeing effect f on the given leg.
std::pair<double, Vector> conditional_state(const BipartiteContext& ctx, const Vector& phi,
                                            const Effect& f, Leg leg, double tol = kSignTol);

// If the A-marginal of phi is pure, phi must factor as that marginal tensored
// with its B-marginal; returns the factors, or nullopt when the marginal is
// mixed.  A pure marginal without factorization means the supplied state set
// is not sandwiched between min and max, and is reported as an error.
std::optional<std::pair<Vector, Vector>> product_decomposition_if_pure_marginal(
    const BipartiteContext& ctx, const Vector& phi, double tol = kEqTol);

bool min_equals_max(const StateSpace& a, const StateSpace& b, int dim_cap = kDefaultDimCap);

}  // namespace gpt
