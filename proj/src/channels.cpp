#include "gptkit/channels.hpp"

#include <cmath>

#include "gptkit/lp.hpp"

namespace gpt {

namespace {

// Dual basis of the simplex vertices: <s_i, b_j> = delta_ij.
std::vector<Vector> simplex_readout(int n) {
  std::vector<Vector> b;
  Vector b1 = Vector::Constant(n, -1.0);
  b1(n - 1) = 1.0;
  if (n == 1) b1(0) = 1.0;
  b.push_back(b1);
  for (int i = 2; i <= n; ++i) {
    Vector bi = Vector::Zero(n);
    bi(i - 2) = 1.0;
    b.push_back(bi);
  }
  return b;
}

Vector unit_row(int d) {
  Vector u = Vector::Zero(d);
  u(d - 1) = 1.0;
  return u;
}

}  // namespace

Channel validate_channel(const Matrix& m, const StateSpace& domain, const StateSpace& codomain,
                         double tol) {
  require(m.rows() == codomain.lifted_dim && m.cols() == domain.lifted_dim,
          Err::DimensionMismatch, "channel matrix shape does not match the spaces");
  require(all_finite(m), Err::NonFinite, "channel matrix has non-finite entries");
  Vector last = m.row(m.rows() - 1).transpose();
  require((last - unit_row(domain.lifted_dim)).lpNorm<Eigen::Infinity>() <= std::max(tol, kEqTol),
          Err::NotUnital, "channel does not preserve normalization");
  for (size_t i = 0; i < domain.vertices.size(); ++i) {
    Vector img = m * domain.vertices[i];
    if (!contains(codomain, img, std::max(tol, kSignTol))) {
      std::string detail;
      try {
        Separator sep = separating_functional(codomain.vertices, img, kSignTol / 10.0);
        detail = " (separated with margin " + std::to_string(sep.normal.dot(img) + sep.offset) + ")";
      } catch (const Error&) {
      }
      throw Error(Err::NotPositive, "image of domain vertex " + std::to_string(i) +
                                        " leaves the codomain" + detail);
    }
  }
  Channel ch;
  ch.domain = domain;
  ch.codomain = codomain;
  ch.matrix = m;
  ch.matrix.row(m.rows() - 1) = unit_row(domain.lifted_dim).transpose();
  return ch;
}

Vector apply(const Channel& ch, const Vector& x) {
  require(static_cast<int>(x.size()) == ch.domain.lifted_dim, Err::DimensionMismatch,
          "state dimension does not match channel domain");
  return ch.matrix * x;
}

Vector adjoint_apply(const Channel& ch, const Vector& f) {
  require(static_cast<int>(f.size()) == ch.codomain.lifted_dim, Err::DimensionMismatch,
          "functional dimension does not match channel codomain");
  return ch.matrix.transpose() * f;
}

Channel compose(const Channel& second, const Channel& first, double tol) {
  require(same_space(first.codomain, second.domain, tol), Err::SpaceMismatch,
          "channels do not compose: codomain/domain mismatch");
  Channel ch;
  ch.domain = first.domain;
  ch.codomain = second.codomain;
  ch.matrix = second.matrix * first.matrix;
  ch.matrix.row(ch.matrix.rows() - 1) = unit_row(first.domain.lifted_dim).transpose();
  return ch;
}

Channel identity_channel(const StateSpace& k) {
  Channel ch;
  ch.domain = k;
  ch.codomain = k;
  ch.matrix = Matrix::Identity(k.lifted_dim, k.lifted_dim);
  return ch;
}

Channel constant_channel(const StateSpace& domain, const StateSpace& codomain, const Vector& y,
                         double tol) {
  require(contains(codomain, y, std::max(tol, kSignTol)), Err::NotAState,
          "constant channel must prepare a state");
  Channel ch;
  ch.domain = domain;
  ch.codomain = codomain;
  ch.matrix = y * unit_row(domain.lifted_dim).transpose();
  return ch;
}

Vector apply_to_leg(const Channel& ch, const Vector& phi, const BipartiteContext& ctx, Leg leg,
                    double tol) {
  const int da = ctx.a.lifted_dim;
  const int db = ctx.b.lifted_dim;
  require(static_cast<int>(phi.size()) == da * db, Err::DimensionMismatch,
          "bipartite vector has the wrong dimension");
  const StateSpace& hit = (leg == Leg::A) ? ctx.a : ctx.b;
  require(same_space(hit, ch.domain, kEqTol), Err::SpaceMismatch,
          "channel domain does not match the chosen leg");

  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      phi.data(), da, db);
  Matrix outm = (leg == Leg::B) ? Matrix(m * ch.matrix.transpose()) : Matrix(ch.matrix * m);
  const StateSpace& out_a = (leg == Leg::A) ? ch.codomain : ctx.a;
  const StateSpace& out_b = (leg == Leg::B) ? ch.codomain : ctx.b;
  Vector out(out_a.lifted_dim * out_b.lifted_dim);
  for (int i = 0; i < outm.rows(); ++i)
    for (int j = 0; j < outm.cols(); ++j) out(i * outm.cols() + j) = outm(i, j);

  switch (ctx.rule) {
    case TensorRule::Max:
      require(max_tensor_contains(out_a, out_b, out, std::max(tol, kSignTol)),
              Err::NumericalFailure, "channel output left the max tensor product");
      break;
    case TensorRule::Min:
      require(contains(min_tensor(out_a, out_b), out, std::max(tol, kSignTol)),
              Err::NumericalFailure, "channel output left the min tensor product");
      break;
    case TensorRule::Explicit: {
      // Not every affine map that is positive on the marginals stays positive
      // on an explicit state set; report the first violated generator pair.
      std::vector<Vector> gens = product_generators(out_a, out_b);
      for (size_t g = 0; g < gens.size(); ++g)
        if (out.dot(gens[g]) < -std::max(tol, kSignTol))
          throw Error(Err::CPViolation,
                      "output violates product generator " + std::to_string(g));
      break;
    }
  }
  return out;
}

Measurement measurement_from_effects(const StateSpace& k, const std::vector<Effect>& effects,
                                     double tol) {
  require(!effects.empty(), Err::EmptyInput, "measurement needs at least one outcome");
  Vector sum = Vector::Zero(k.lifted_dim);
  for (size_t i = 0; i < effects.size(); ++i) {
    require(is_effect(k, effects[i], std::max(tol, kSignTol)), Err::NotAnEffect,
            "outcome " + std::to_string(i) + " is not an effect");
    sum += effects[i];
  }
  require((sum - unit_effect(k)).lpNorm<Eigen::Infinity>() <= std::max(tol, kEqTol),
          Err::NotNormalized, "effects do not sum to the unit");

  const int n = static_cast<int>(effects.size());
  // Outcome distribution p written in lifted simplex coordinates is
  // (p_2, ..., p_n, 1), so the channel rows are f_2 ... f_n and the unit row.
  Matrix m(n, k.lifted_dim);
  for (int j = 1; j < n; ++j) m.row(j - 1) = effects[j].transpose();
  m.row(n - 1) = unit_effect(k).transpose();

  Measurement meas;
  meas.space = k;
  meas.effects = effects;
  meas.underlying = validate_channel(m, k, simplex(n), std::max(tol, kSignTol));
  return meas;
}

Vector outcome_probabilities(const Measurement& m, const Vector& x) {
  require(contains(m.space, x, kSignTol), Err::NotAState, "measuring a non-state");
  Vector p(m.effects.size());
  for (size_t i = 0; i < m.effects.size(); ++i) p(static_cast<int>(i)) = x.dot(m.effects[i]);
  return p;
}

Channel preparation_from_states(const StateSpace& codomain, const std::vector<Vector>& states,
                                double tol) {
  require(!states.empty(), Err::EmptyInput, "preparation needs at least one state");
  const int n = static_cast<int>(states.size());
  std::vector<Vector> b = simplex_readout(n);
  Matrix m = Matrix::Zero(codomain.lifted_dim, n);
  for (int i = 0; i < n; ++i) {
    require(contains(codomain, states[i], std::max(tol, kSignTol)), Err::NotAState,
            "preparation target " + std::to_string(i) + " is not a state");
    m += states[i] * b[i].transpose();
  }
  return validate_channel(m, simplex(n), codomain, std::max(tol, kSignTol));
}

Instrument instrument_assemble(const std::vector<Matrix>& branches, const StateSpace& domain,
                               const StateSpace& codomain, double tol) {
  require(!branches.empty(), Err::EmptyInput, "instrument needs at least one branch");
  ConeRep codomain_cone;
  codomain_cone.generators = codomain.vertices;
  Matrix total = Matrix::Zero(codomain.lifted_dim, domain.lifted_dim);
  for (size_t i = 0; i < branches.size(); ++i) {
    const Matrix& br = branches[i];
    require(br.rows() == codomain.lifted_dim && br.cols() == domain.lifted_dim,
            Err::DimensionMismatch, "branch shape does not match the spaces");
    for (const Vector& v : domain.vertices)
      require(cone_contains(codomain_cone, br * v, std::max(tol, kSignTol)),
              Err::BranchNotPositive,
              "branch " + std::to_string(i) + " maps a vertex outside the state cone");
    total += br;
  }
  try {
    validate_channel(total, domain, codomain, tol);
  } catch (const Error& e) {
    throw Error(Err::SumNotChannel, std::string("branch sum is not a channel: ") + e.what());
  }
  Instrument ins;
  ins.domain = domain;
  ins.codomain = codomain;
  ins.branches = branches;
  return ins;
}

Measurement induced_measurement(const Instrument& ins, double tol) {
  std::vector<Effect> effects;
  Vector u = unit_row(ins.codomain.lifted_dim);
  for (const Matrix& br : ins.branches) effects.push_back(br.transpose() * u);
  return measurement_from_effects(ins.domain, effects, tol);
}

Channel induced_total(const Instrument& ins, double tol) {
  Matrix total = Matrix::Zero(ins.codomain.lifted_dim, ins.domain.lifted_dim);
  for (const Matrix& br : ins.branches) total += br;
  return validate_channel(total, ins.domain, ins.codomain, tol);
}

std::optional<Channel> is_post_processing_of(const Channel& fine, const Channel& coarse,
                                             double tol) {
  require(same_space(fine.domain, coarse.domain, kEqTol), Err::SpaceMismatch,
          "post-processing needs a common domain");
  const int dc = coarse.codomain.lifted_dim;
  const int dd = fine.codomain.lifted_dim;
  const int da = coarse.domain.lifted_dim;

  LpBuilder lp;
  // Lambda is dd x dc, row-major variable block.
  std::vector<int> lam = lp.add_free_vars(dd * dc, 0.0);
  auto L = [&](int r, int c) { return lam[r * dc + c]; };

  // Lambda * coarse == fine, entry by entry.
  for (int r = 0; r < dd; ++r)
    for (int c = 0; c < da; ++c) {
      LpBuilder::Terms row;
      for (int k = 0; k < dc; ++k) row.push_back({L(r, k), coarse.matrix(k, c)});
      lp.add_eq(row, fine.matrix(r, c));
    }
  // Unitality of Lambda.
  for (int k = 0; k < dc; ++k)
    lp.add_eq({{L(dd - 1, k), 1.0}}, k == dc - 1 ? 1.0 : 0.0);
  // Lambda maps coarse-codomain vertices into the fine codomain.
  for (const Vector& w : coarse.codomain.vertices) {
    std::vector<int> mu = lp.add_vars(static_cast<int>(fine.codomain.vertices.size()), 0.0);
    for (int r = 0; r < dd; ++r) {
      LpBuilder::Terms row;
      for (int k = 0; k < dc; ++k) row.push_back({L(r, k), w(k)});
      for (size_t p = 0; p < fine.codomain.vertices.size(); ++p)
        row.push_back({mu[p], -fine.codomain.vertices[p](r)});
      lp.add_eq(row, 0.0);
    }
  }

  LpOutcome out = lp.solve(std::max(tol, kSignTol));
  if (out.status != LpStatus::Optimal) return std::nullopt;
  Matrix m(dd, dc);
  for (int r = 0; r < dd; ++r)
    for (int c = 0; c < dc; ++c) m(r, c) = lp.value(out, L(r, c));
  return validate_channel(m, coarse.codomain, fine.codomain, std::max(tol, kSignTol) * 10.0);
}

Channel measure_and_prepare(const Measurement& m, const StateSpace& codomain,
                            const std::vector<Vector>& states, double tol) {
  require(states.size() == m.effects.size(), Err::InvalidArity,
          "one prepared state per outcome");
  Channel prep = preparation_from_states(codomain, states, tol);
  return compose(prep, m.underlying, kEqTol);
}

bool is_entanglement_breaking(const Channel& ch, const StateSpace& probe,
                              const std::vector<Vector>& probe_states, double tol) {
  std::vector<Vector> inputs = probe_states;
  if (inputs.empty()) inputs = min_tensor(probe, ch.domain).vertices;
  BipartiteContext ctx = make_context(probe, ch.domain, TensorRule::Max);
  for (const Vector& phi : inputs) {
    Vector out = apply_to_leg(ch, phi, ctx, Leg::B, tol);
    if (!is_separable(probe, ch.codomain, out, std::max(tol, kSignTol)).separable) return false;
  }
  return true;
}

}  // namespace gpt
