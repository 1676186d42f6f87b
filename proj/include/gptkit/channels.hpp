#pragma once

#include <optional>
#include <vector>

#include "gptkit/state_space.hpp"
#include "gptkit/tensor.hpp"
#include "gptkit/types.hpp"

namespace gpt {

// Affine map between state spaces, stored as a matrix on the lifted
// coordinates.  Unitality shows up structurally: the last row is the
// codomain's unit row e_last^T.
struct Channel {
  StateSpace domain, codomain;
  Matrix matrix;
};

// Checks positivity (vertex images land in the codomain) and unitality.
Channel validate_channel(const Matrix& m, const StateSpace& domain, const StateSpace& codomain,
                         double tol = kSignTol);

Vector apply(const Channel& ch, const Vector& x);
// Pullback of functionals along the channel.
Vector adjoint_apply(const Channel& ch, const Vector& f);

Channel compose(const Channel& second, const Channel& first, double tol = kEqTol);
Channel identity_channel(const StateSpace& k);
// x |-> <x, 1> * y; always a channel when y is a state.
Channel constant_channel(const StateSpace& domain, const StateSpace& codomain, const Vector& y,
                         double tol = kSignTol);

// Apply a channel to one leg of a bipartite state and check the result lands
// in the matching output state set.  For min/max contexts the check cannot
// fail on valid input; for explicit contexts a violated product generator is
// reported as CPViolation.
Vector apply_to_leg(const Channel& ch, const Vector& phi, const BipartiteContext& ctx, Leg leg,
                    double tol = kSignTol);

// n-outcome measurement as a channel into the n-point simplex, with the
// effect list kept alongside.
struct Measurement {
  StateSpace space;
  std::vector<Effect> effects;
  Channel underlying;
};

Measurement measurement_from_effects(const StateSpace& k, const std::vector<Effect>& effects,
                                     double tol = kSignTol);
Vector outcome_probabilities(const Measurement& m, const Vector& x);

// Channel from the n-point simplex sending vertex i to states[i].
Channel preparation_from_states(const StateSpace& codomain, const std::vector<Vector>& states,
                                double tol = kSignTol);

// Collection of subnormalized branches summing to a channel.
struct Instrument {
  StateSpace domain, codomain;
  std::vector<Matrix> branches;
};

Instrument instrument_assemble(const std::vector<Matrix>& branches, const StateSpace& domain,
                               const StateSpace& codomain, double tol = kSignTol);
Measurement induced_measurement(const Instrument& ins, double tol = kSignTol);
Channel induced_total(const Instrument& ins, double tol = kSignTol);

// Does some channel Lambda satisfy Lambda . coarse == fine?  Returns the
// post-processing channel when it exists.
std::optional<Channel> is_post_processing_of(const Channel& fine, const Channel& coarse,
                                             double tol = kSignTol);

// Measure with m, then prepare states[i] on outcome i.
Channel measure_and_prepare(const Measurement& m, const StateSpace& codomain,
                            const std::vector<Vector>& states, double tol = kSignTol);

// (id_probe x ch) maps every supplied probe state (else every vertex of
// probe min-tensor domain) to a separable state.
bool is_entanglement_breaking(const Channel& ch, const StateSpace& probe,
                              const std::vector<Vector>& probe_states, double tol = kSignTol);

}  // namespace gpt
