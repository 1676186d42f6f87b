#pragma once

#include <string>
#include <vector>

#include "gptkit/types.hpp"

namespace gpt {

// Elements of A(K)* as coordinate vectors in the lifted representation
// (states end in 1); elements of A(K) paired with them by dot product.
using Functional = Vector;
using Effect = Vector;

// Vertex-represented polytope in lifted coordinates: every stored vertex is
// extreme and has last coordinate exactly 1.
struct StateSpace {
  std::string name;
  int lifted_dim = 0;
  std::vector<Vector> vertices;
};

// Lifts raw points (appends the trailing 1), drops duplicates and
// non-extreme points.
StateSpace from_vertices(const std::vector<Vector>& raw_points, const std::string& name = "custom");

// Prunes an already-lifted vertex list down to the extreme points.
StateSpace from_lifted_vertices(std::vector<Vector> lifted, const std::string& name);

// Classical simplex S_n, lifted_dim n: s_1 = e_n, s_i = e_{i-1} + e_n.
StateSpace simplex(int n);

// The square state space of one-bit-in/one-bit-out boxes; vertex order
// s00, s10, s01, s11.
StateSpace boxworld_square();

StateSpace regular_polygon(int k);

// The constant-1 effect (last-coordinate selector).
Vector unit_effect(const StateSpace& k);

// Uniform mixture of all vertices.
Vector barycenter(const StateSpace& k);

bool contains(const StateSpace& k, const Functional& phi, double tol = kSignTol);
bool is_pure(const StateSpace& k, const Functional& phi, double tol = kEqTol);
bool in_relative_interior(const StateSpace& k, const Functional& phi, double tol = kSignTol);
bool is_simplex(const StateSpace& k);

bool same_space(const StateSpace& a, const StateSpace& b, double tol = kEqTol);

}  // namespace gpt
