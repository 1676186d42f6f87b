#pragma once

#include "gptkit/channels.hpp"
#include "gptkit/state_space.hpp"
#include "gptkit/types.hpp"

namespace gpt {
namespace boxworld {

// Square vertices by input bit: s00, s10, s01, s11 = s10 + s01 - s00.
Vector s00();
Vector s10();
Vector s01();
Vector s11();

// Coordinate readout effects of the square.
Effect fx();
Effect fy();

Measurement fx_measurement();
Measurement fy_measurement();

// Quarter rotation of the square (s00 -> s10 -> s11 -> s01 -> s00).
Channel rotation();
// Reflection across the anti-diagonal (s00 <-> s11, s10 and s01 fixed).
Channel reflection();

// PR-box style maximally entangled bipartite state of square (x)_max square.
Vector pr_state();

// Order isomorphism from the square's effect cone onto its state cone:
// fx -> s00, fy -> s10, 1 - fy -> s01.
Matrix iota();

// Bipartite state (id (x) psi)(pr_state) built from a positive map psi on
// the square's dual; requires the normalization <psi(s10) + psi(s01), 1>/2 = 1.
Vector state_from_positive_map(const Matrix& psi, double tol = kEqTol);

}  // namespace boxworld
}  // namespace gpt
