#pragma once

#include "gptkit/types.hpp"

namespace gpt {
namespace qubit {

// Qubit in GPT coordinates: states are (w1, w2, w3, 1) with |w| <= 1,
// effects (v1, v2, v3, c) pair as c + <v, w>.

// State from a Bloch vector (appends the trailing 1).
Vector state(const Vector& bloch);

double pairing(const Vector& effect, const Vector& state);

// Base norm of psi = (w, t): max(|t|, |w|_2).
double base_norm(const Vector& psi);

struct Discrimination {
  double p_succ = 0.0;
  Vector optimal_effect;  // Helstrom effect (d/(2|d|), 1/2) in (v, c) layout
};

// Closed-form two-state discrimination (Helstrom):
// p = (1 + max(|2 lambda - 1|, |lambda w0 - (1-lambda) w1|)) / 2.
Discrimination discriminate(const Vector& bloch0, const Vector& bloch1, double lambda);

}  // namespace qubit
}  // namespace gpt
