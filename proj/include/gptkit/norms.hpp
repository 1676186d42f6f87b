#pragma once

#include "gptkit/effects.hpp"
#include "gptkit/state_space.hpp"
#include "gptkit/types.hpp"

namespace gpt {

// max_{x in K} |<x, f>|; attained at a vertex.
double order_unit_norm(const StateSpace& k, const Vector& f);

// Base norm of psi in span(K): minimal s + t over decompositions
// psi = s*x - t*y with x, y in K.
double base_norm(const StateSpace& k, const Vector& psi, double tol = kSignTol);

// Independent check via duality: max over effect vertices of |<psi, 2f - 1>|.
double dual_norm_oracle(const EffectAlgebra& ea, const Vector& psi);
double dual_norm_oracle(const StateSpace& k, const Vector& psi);

struct DiscriminationResult {
  double p_succ = 0.0;
  double base_norm_value = 0.0;
  Effect optimal_effect;
};

// Optimal single-shot discrimination of x0 (prior lambda) against x1:
// p = (1 + ||lambda x0 - (1-lambda) x1||) / 2.
DiscriminationResult discrimination_probability(const StateSpace& k, const Vector& x0,
                                                const Vector& x1, double lambda,
                                                double tol = kSignTol);

}  // namespace gpt
