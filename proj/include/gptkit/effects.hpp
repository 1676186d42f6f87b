#pragma once

#include <vector>

#include "gptkit/cone.hpp"
#include "gptkit/state_space.hpp"
#include "gptkit/types.hpp"

namespace gpt {

// Dual description of the effects of a state space: generators of the
// positive cone A(K)^+ and the vertices of the effect polytope [0, 1_K].
struct EffectAlgebra {
  Vector unit;
  std::vector<Vector> positive_generators;
  std::vector<Vector> effect_vertices;
};

EffectAlgebra effect_algebra(const StateSpace& k, int dim_cap = kDefaultDimCap);

// 0 <= <x,f> <= 1 on every state.
bool is_effect(const StateSpace& k, const Effect& f, double tol = kSignTol);

Effect complement(const StateSpace& k, const Effect& f, double tol = kSignTol);

// f <= g in the effect order: <x, g-f> >= 0 on all of K.
bool effect_leq(const StateSpace& k, const Effect& f, const Effect& g, double tol = kSignTol);

// State space induced by a restricted set of effects: states are linear
// functionals on span(effect_set + unit) that are nonnegative on the set and
// normalized on the unit.  When the set fails to separate points the result
// lives on the quotient (separates == false) rather than erroring out, so
// coarse-grainings like {f, 1-f} produce the classical bit they embody.
struct RestrictedTheory {
  StateSpace space;
  Matrix transform;  // maps original dual coordinates to the new state coordinates
  bool separates = true;
};

RestrictedTheory state_space_of_effects(const std::vector<Effect>& effect_set, const Vector& unit,
                                        int dim_cap = kDefaultDimCap, double tol = kSignTol);

}  // namespace gpt
