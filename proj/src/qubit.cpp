#include "gptkit/qubit.hpp"

#include <cmath>

namespace gpt {
namespace qubit {

Vector state(const Vector& bloch) {
  require(bloch.size() == 3, Err::DimensionMismatch, "Bloch vector must be three-dimensional");
  require(all_finite(bloch), Err::NonFinite, "Bloch vector has non-finite entries");
  require(bloch.norm() <= 1.0 + kEqTol, Err::NotAState, "Bloch vector outside the unit ball");
  Vector s(4);
  s.head(3) = bloch;
  s(3) = 1.0;
  return s;
}

double pairing(const Vector& effect, const Vector& state) {
  require(effect.size() == 4 && state.size() == 4, Err::DimensionMismatch,
          "qubit vectors are four-dimensional");
  return effect.dot(state);
}

double base_norm(const Vector& psi) {
  require(psi.size() == 4, Err::DimensionMismatch, "qubit vectors are four-dimensional");
  return std::max(std::abs(psi(3)), psi.head(3).norm());
}

Discrimination discriminate(const Vector& bloch0, const Vector& bloch1, double lambda) {
  require(lambda >= 0.0 && lambda <= 1.0, Err::BadPrior, "prior must lie in [0,1]");
  Vector x0 = state(bloch0);
  Vector x1 = state(bloch1);
  Vector d = lambda * bloch0 - (1.0 - lambda) * bloch1;
  const double t = 2.0 * lambda - 1.0;
  Discrimination res;
  res.p_succ = 0.5 * (1.0 + std::max(std::abs(t), d.norm()));
  res.optimal_effect = Vector::Zero(4);
  if (d.norm() >= std::abs(t) && d.norm() > 0.0) {
    res.optimal_effect.head(3) = d / (2.0 * d.norm());
    res.optimal_effect(3) = 0.5;
  } else if (t >= 0.0) {
    res.optimal_effect(3) = 1.0;  // always answer x0
  }  // else the zero effect: always answer x1
  return res;
}

}  // namespace qubit
}  // namespace gpt
