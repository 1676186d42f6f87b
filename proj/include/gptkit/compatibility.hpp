#pragma once

#include <vector>

#include "gptkit/channels.hpp"
#include "gptkit/lp.hpp"
#include "gptkit/state_space.hpp"
#include "gptkit/tensor.hpp"
#include "gptkit/types.hpp"

namespace gpt {

// Joint measurability of two measurements on the same space.  On success the
// grid h[i][j] of joint effects has row sums m1 and column sums m2; on
// failure the Farkas certificate of the infeasible LP is kept, and
// measurement_witness_value evaluates it on other pairs (nonnegative on
// every compatible pair, positive on the rejected one).
struct MeasurementCompatVerdict {
  bool compatible = false;
  std::vector<std::vector<Effect>> grid;
  Vector certificate;
  LpProblem problem;  // standard form the certificate refutes
  int outcomes1 = 0, outcomes2 = 0;
};

MeasurementCompatVerdict measurements_compatible(const Measurement& m1, const Measurement& m2,
                                                 double tol = kSignTol);

double measurement_witness_value(const MeasurementCompatVerdict& verdict, const StateSpace& k,
                                 const Measurement& m1, const Measurement& m2);

// Largest t such that the depolarized measurements t f_i + (1-t)/n 1 are
// jointly measurable; found by bisection.
double compatibility_robustness(const Measurement& m1, const Measurement& m2,
                                double tol = kSignTol, int iterations = 40);

struct ChannelCompatVerdict {
  bool compatible = false;
  Matrix joint;  // channel matrix into codomain1 (x) codomain2
  Vector certificate;
  LpProblem problem;  // standard form the certificate refutes
};

// One channel into B (x) C whose marginals are the two given channels; the
// bipartite state set on the output is chosen by rule.
ChannelCompatVerdict channels_compatible(const Channel& c1, const Channel& c2, TensorRule rule,
                                         double tol = kSignTol, int dim_cap = kDefaultDimCap);

// Universal broadcasting restricted to fixed_set (defaults to all vertices):
// a channel K -> K (x) K whose both marginals fix every listed state.
ChannelCompatVerdict broadcasting_feasible(const StateSpace& k,
                                           const std::vector<Vector>& fixed_set, TensorRule rule,
                                           double tol = kSignTol, int dim_cap = kDefaultDimCap);

// Incompatibility certified from input/output data alone: only the channel
// values on the test states (and their affine dependences) constrain the
// joint.  True means no joint explains even this partial data.
bool certify_incompatibility(const Channel& c1, const Channel& c2,
                             const std::vector<Vector>& test_states, TensorRule rule,
                             double tol = kSignTol, int dim_cap = kDefaultDimCap);

// One-sided steering: both parties apply their channel to leg A of the
// shared state x_ad in A (x) D; steering holds when no tripartite state in
// B (x) C (x) D has the two required marginals.
bool steering_check(const Channel& c1, const Channel& c2, const Vector& x_ad,
                    const StateSpace& d_space, TensorRule rule, double tol = kSignTol,
                    int dim_cap = kDefaultDimCap);

// Bell non-locality: both ends of x_ad get a pair of incompatible channels;
// non-local when no four-partite state in B (x) C (x) E (x) F reproduces all
// four marginal channel pairs.
bool bell_check(const Channel& c1, const Channel& c2, const Channel& e1, const Channel& e2,
                const Vector& x_ad, TensorRule rule, double tol = kSignTol,
                int dim_cap = kDefaultDimCap);

}  // namespace gpt
