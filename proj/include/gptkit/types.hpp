#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Global tolerance policy: sign tests use kSignTol, equality assertions
// kEqTol. Every tolerance-taking operation accepts an override.
inline constexpr double kSignTol = 1e-9;
inline constexpr double kEqTol = 1e-7;

enum class Err {
  MalformedProblem,
  NumericalFailure,
  DimensionMismatch,
  DimensionTooLarge,
  DegenerateCone,
  NotSeparable,
  EmptyInput,
  NonFinite,
  InvalidArity,
  NotAState,
  NotAnEffect,
  NotNormalized,
  OutsideSpan,
  BadPrior,
  SpaceMismatch,
  NotPositive,
  NotUnital,
  BranchNotPositive,
  SumNotChannel,
  CPViolation,
  NoUnit,
  DoesNotSeparate,
  SchemaError,
};

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

inline void require(bool cond, Err code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

inline bool all_finite(const Vector& v) { return v.allFinite(); }
inline bool all_finite(const Matrix& m) { return m.allFinite(); }

inline Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace gpt
