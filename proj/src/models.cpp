#include "gptkit/models.hpp"

#include <cmath>

#include "gptkit/tensor.hpp"

namespace gpt {
namespace boxworld {

Vector s00() { return to_vector({0, 0, 1}); }
Vector s10() { return to_vector({1, 0, 1}); }
Vector s01() { return to_vector({0, 1, 1}); }
Vector s11() { return to_vector({1, 1, 1}); }

Effect fx() { return to_vector({1, 0, 0}); }
Effect fy() { return to_vector({0, 1, 0}); }

Measurement fx_measurement() {
  StateSpace sq = boxworld_square();
  return measurement_from_effects(sq, {fx(), unit_effect(sq) - fx()});
}

Measurement fy_measurement() {
  StateSpace sq = boxworld_square();
  return measurement_from_effects(sq, {fy(), unit_effect(sq) - fy()});
}

namespace {

// Affine map fixed by three vertex images; the image of the fourth vertex is
// forced by s11 = s10 + s01 - s00 and double-checked.
Channel square_symmetry(const Vector& i00, const Vector& i10, const Vector& i01) {
  Matrix tin(3, 3), tout(3, 3);
  tin.col(0) = s00();
  tin.col(1) = s10();
  tin.col(2) = s01();
  tout.col(0) = i00;
  tout.col(1) = i10;
  tout.col(2) = i01;
  Matrix m = tout * tin.inverse();
  Vector i11 = i10 + i01 - i00;
  require((m * s11() - i11).lpNorm<Eigen::Infinity>() <= 1e-12, Err::NumericalFailure,
          "square symmetry is inconsistent on the fourth vertex");
  StateSpace sq = boxworld_square();
  return validate_channel(m, sq, sq);
}

}  // namespace

Channel rotation() { return square_symmetry(s10(), s11(), s00()); }

Channel reflection() { return square_symmetry(s11(), s10(), s01()); }

Vector pr_state() {
  return 0.5 * (kron(s00(), Vector(s01() - s00())) + kron(s10(), s00()) + kron(s01(), s10()));
}

Matrix iota() {
  // Columns are the images of e0, e1, e2; iota(e2) = iota(1 - fy) + iota(fy).
  Matrix m(3, 3);
  m.col(0) = s00();
  m.col(1) = s10();
  m.col(2) = s01() + s10();
  return m;
}

Vector state_from_positive_map(const Matrix& psi, double tol) {
  require(psi.rows() == 3 && psi.cols() == 3, Err::DimensionMismatch,
          "positive map on the square dual must be 3x3");
  Vector u = to_vector({0, 0, 1});
  double norm = 0.5 * (psi * s10() + psi * s01()).dot(u);
  require(std::abs(norm - 1.0) <= tol, Err::NotNormalized,
          "positive map does not normalize the shared state");
  Vector x0 = pr_state();
  Vector out(9);
  for (int i = 0; i < 3; ++i) out.segment(3 * i, 3) = psi * Vector(x0.segment(3 * i, 3));
  return out;
}

}  // namespace boxworld
}  // namespace gpt
