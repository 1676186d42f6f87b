#pragma once

#include <utility>
#include <vector>

#include "gptkit/types.hpp"

namespace gpt {

// Standard form: minimize c.x subject to A x = b, x >= 0.
struct LpProblem {
  Vector c;
  Matrix A;
  Vector b;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;    // valid when Optimal
  Vector point;          // valid when Optimal
  Vector certificate;    // Farkas dual when Infeasible: y'A <= 0, y'b > 0
};

// Two-phase primal simplex with Bland's anti-cycling rule. Deterministic:
// the entering column is always the lowest eligible index.
LpOutcome lp_solve(const LpProblem& p, double tol = kSignTol);

// Assembles standard-form problems from equations over "logical" variables,
// which may be nonnegative or free (free ones are split into a difference of
// two nonnegative columns).
class LpBuilder {
 public:
  using Terms = std::vector<std::pair<int, double>>;  // (logical var, coefficient)

  int add_var(double cost = 0.0);       // x >= 0
  int add_free_var(double cost = 0.0);  // unrestricted
  std::vector<int> add_vars(int count, double cost = 0.0);
  std::vector<int> add_free_vars(int count, double cost = 0.0);

  void add_eq(const Terms& terms, double rhs);
  void add_ge(const Terms& terms, double rhs);  // terms >= rhs, via surplus column
  void add_le(const Terms& terms, double rhs);  // terms <= rhs, via slack column

  LpProblem build() const;
  LpOutcome solve(double tol = kSignTol) const;

  // Value of a logical variable in a solution of the built problem.
  double value(const LpOutcome& out, int var) const;
  Vector values(const LpOutcome& out, const std::vector<int>& vars) const;

  int rows() const { return static_cast<int>(rows_.size()); }

 private:
  struct Row {
    Terms terms;
    double rhs;
    int relation;  // 0: ==, 1: >=, -1: <=
  };
  struct Var {
    double cost;
    bool free;
  };
  std::vector<Var> vars_;
  std::vector<Row> rows_;
};

}  // namespace gpt
