// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Pass --cli <path> so criterion 12 can exercise the command-line tool.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gptkit/compatibility.hpp"
#include "gptkit/io.hpp"
#include "gptkit/models.hpp"
#include "gptkit/norms.hpp"
#include "gptkit/qubit.hpp"

using namespace gpt;

namespace {

int g_failures = 0;

void report(int n, const std::string& what, bool ok, const std::string& detail = "") {
  std::printf("%s criterion %2d: %s%s\n", ok ? "PASS" : "FAIL", n, what.c_str(),
              detail.empty() ? "" : ("  [" + detail + "]").c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

template <typename Fn>
void criterion(int n, const std::string& what, Fn&& fn) {
  try {
    std::string detail;
    bool ok = fn(detail);
    report(n, what, ok, detail);
  } catch (const std::exception& e) {
    report(n, what, false, std::string("exception: ") + e.what());
  }
}

std::vector<StateSpace> reference_spaces() {
  return {simplex(2), simplex(3), boxworld_square(), regular_polygon(5)};
}

Vector random_state(const StateSpace& k, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vector x = Vector::Zero(k.lifted_dim);
  double tot = 0.0;
  std::vector<double> w(k.vertices.size());
  for (double& wi : w) {
    wi = u(rng);
    tot += wi;
  }
  for (size_t i = 0; i < k.vertices.size(); ++i) x += (w[i] / tot) * k.vertices[i];
  return x;
}

Effect random_effect(const EffectAlgebra& ea, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vector f = Vector::Zero(ea.unit.size());
  double tot = 0.0;
  std::vector<double> w(ea.effect_vertices.size());
  for (double& wi : w) {
    wi = u(rng);
    tot += wi;
  }
  for (size_t i = 0; i < ea.effect_vertices.size(); ++i)
    f += (w[i] / tot) * ea.effect_vertices[i];
  return f;
}

Vector random_span(const StateSpace& k, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector psi = Vector::Zero(k.lifted_dim);
  for (const Vector& v : k.vertices) psi += u(rng) * v;
  return psi;
}

Channel random_square_channel(std::mt19937& rng) {
  StateSpace sq = boxworld_square();
  EffectAlgebra ea = effect_algebra(sq);
  Effect f = random_effect(ea, rng);
  Measurement m = measurement_from_effects(sq, {f, Vector(unit_effect(sq) - f)}, kEqTol);
  Channel mp = measure_and_prepare(m, sq, {random_state(sq, rng), random_state(sq, rng)});
  std::uniform_int_distribution<int> pick(0, 2);
  switch (pick(rng)) {
    case 0:
      return compose(boxworld::rotation(), mp);
    case 1:
      return compose(boxworld::reflection(), mp);
    default:
      return mp;
  }
}

bool farkas_ok(const Vector& y, const LpProblem& p, std::string& detail) {
  if (y.size() != p.b.size()) {
    detail = "certificate has the wrong size";
    return false;
  }
  double slack = (p.A.transpose() * y).maxCoeff();
  double gain = y.dot(p.b);
  if (slack > 1e-7 || gain <= 1e-9) {
    detail = "certificate invalid: max y'A = " + std::to_string(slack) +
             ", y'b = " + std::to_string(gain);
    return false;
  }
  return true;
}

Measurement depolarized(const Measurement& m, double t) {
  std::vector<Effect> effs;
  const double n = static_cast<double>(m.effects.size());
  for (const Effect& f : m.effects)
    effs.push_back(t * f + ((1.0 - t) / n) * unit_effect(m.space));
  return measurement_from_effects(m.space, effs, kEqTol);
}

std::string cli_path;  // set from --cli

bool run_cli(const std::string& args, std::string& out) {
  std::string cmd = cli_path + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return false;
  out.clear();
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), p)) > 0) out.append(buf, n);
  return pclose(p) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") cli_path = argv[i + 1];

  criterion(1, "state/effect duality roundtrip reproduces the vertices", [](std::string& d) {
    std::vector<StateSpace> spaces = {simplex(2), simplex(3), simplex(4), simplex(5),
                                      boxworld_square(), regular_polygon(5)};
    for (const StateSpace& k : spaces) {
      EffectAlgebra ea = effect_algebra(k);
      RestrictedTheory rt = state_space_of_effects(ea.effect_vertices, ea.unit);
      if (rt.space.vertices.size() != k.vertices.size()) {
        d = k.name + ": vertex count " + std::to_string(rt.space.vertices.size());
        return false;
      }
      for (const Vector& v : k.vertices) {
        double best = 1e9;
        for (const Vector& w : rt.space.vertices)
          best = std::min(best, (v - w).lpNorm<Eigen::Infinity>());
        if (best > 1e-7) {
          d = k.name + ": vertex off by " + std::to_string(best);
          return false;
        }
      }
    }
    return true;
  });

  criterion(2, "base norm LP agrees with the effect-vertex dual oracle", [](std::string& d) {
    std::mt19937 rng(101);
    for (const StateSpace& k : reference_spaces()) {
      EffectAlgebra ea = effect_algebra(k);
      for (int t = 0; t < 1000; ++t) {
        Vector psi = random_span(k, rng);
        double lp = base_norm(k, psi);
        double oracle = dual_norm_oracle(ea, psi);
        if (std::abs(lp - oracle) > 1e-7) {
          d = k.name + ": |lp - oracle| = " + std::to_string(std::abs(lp - oracle));
          return false;
        }
      }
    }
    return true;
  });

  criterion(3, "discrimination probability matches brute force over effect vertices",
            [](std::string& d) {
              std::mt19937 rng(202);
              std::uniform_real_distribution<double> u(0.0, 1.0);
              std::vector<StateSpace> spaces = reference_spaces();
              for (int t = 0; t < 200; ++t) {
                const StateSpace& k = spaces[t % spaces.size()];
                EffectAlgebra ea = effect_algebra(k);
                Vector x0 = random_state(k, rng), x1 = random_state(k, rng);
                double lam = u(rng);
                double brute = 0.0;
                for (const Vector& f : ea.effect_vertices)
                  brute = std::max(brute, lam * x0.dot(f) + (1.0 - lam) * (1.0 - x1.dot(f)));
                DiscriminationResult r = discrimination_probability(k, x0, x1, lam);
                if (std::abs(r.p_succ - brute) > 1e-7) {
                  d = k.name + ": gap " + std::to_string(std::abs(r.p_succ - brute));
                  return false;
                }
              }
              StateSpace sq = boxworld_square();
              DiscriminationResult r =
                  discrimination_probability(sq, boxworld::s00(), barycenter(sq), 0.5);
              if (std::abs(r.p_succ - 0.75) > 1e-9) {
                d = "square vertex-vs-center: " + std::to_string(r.p_succ);
                return false;
              }
              return true;
            });

  criterion(4, "min equals max exactly when a factor is classical; entangled witnesses",
            [](std::string& d) {
              std::vector<StateSpace> spaces = reference_spaces();
              for (size_t i = 0; i < spaces.size(); ++i)
                for (size_t j = i; j < spaces.size(); ++j) {
                  bool expect = is_simplex(spaces[i]) || is_simplex(spaces[j]);
                  if (min_equals_max(spaces[i], spaces[j]) != expect) {
                    d = spaces[i].name + " x " + spaces[j].name;
                    return false;
                  }
                }
              StateSpace sq = boxworld_square();
              StateSpace mx = max_tensor_vertices(sq, sq);
              bool found_entangled = false;
              for (const Vector& v : mx.vertices) {
                SeparabilityResult r = is_separable(sq, sq, v);
                if (r.separable) continue;
                found_entangled = true;
                if (std::abs(r.witness.dot(v) + 1.0) > 1e-9) {
                  d = "witness not normalized to -1";
                  return false;
                }
                for (const Vector& p : min_tensor(sq, sq).vertices)
                  if (r.witness.dot(p) < -1e-9) {
                    d = "witness negative on a product vertex";
                    return false;
                  }
              }
              if (!found_entangled) {
                d = "no entangled max vertex found";
                return false;
              }
              if (is_separable(sq, sq, boxworld::pr_state()).separable) {
                d = "shared boxworld state reported separable";
                return false;
              }
              return true;
            });

  criterion(5, "broadcasting feasible exactly on simplices, refusals Farkas-certified",
            [](std::string& d) {
              for (int n : {2, 3}) {
                StateSpace s = simplex(n);
                ChannelCompatVerdict v = broadcasting_feasible(s, {}, TensorRule::Min);
                if (!v.compatible) {
                  d = s.name + " not broadcastable";
                  return false;
                }
                for (const Vector& x : s.vertices)
                  if ((v.joint * x - kron(x, x)).lpNorm<Eigen::Infinity>() > 1e-7) {
                    d = s.name + ": broadcast is not the diagonal map";
                    return false;
                  }
              }
              for (const StateSpace& k : {boxworld_square(), regular_polygon(5)}) {
                for (TensorRule rule : {TensorRule::Min, TensorRule::Max}) {
                  ChannelCompatVerdict v = broadcasting_feasible(k, {}, rule);
                  if (v.compatible) {
                    d = k.name + " wrongly broadcastable";
                    return false;
                  }
                  if (!farkas_ok(v.certificate, v.problem, d)) return false;
                }
              }
              return true;
            });

  criterion(6, "depolarizing robustness of the boxworld readouts is exactly one half",
            [](std::string& d) {
              Measurement mx = boxworld::fx_measurement();
              Measurement my = boxworld::fy_measurement();
              double t = compatibility_robustness(mx, my);
              if (std::abs(t - 0.5) > 1e-6) {
                d = "robustness " + std::to_string(t);
                return false;
              }
              if (!measurements_compatible(depolarized(mx, 0.5), depolarized(my, 0.5))
                       .compatible) {
                d = "incompatible at t = 0.5";
                return false;
              }
              if (measurements_compatible(depolarized(mx, 0.5 + 1e-4), depolarized(my, 0.5 + 1e-4))
                      .compatible) {
                d = "compatible at t = 0.5 + 1e-4";
                return false;
              }
              return true;
            });

  criterion(7, "pure marginals of max tensor vertices force product structure",
            [](std::string& d) {
              StateSpace sq = boxworld_square();
              BipartiteContext ctx = make_context(sq, sq, TensorRule::Max);
              StateSpace mx = max_tensor_vertices(sq, sq);
              int pure_count = 0;
              for (const Vector& v : mx.vertices) {
                Vector ma = partial_contract(3, 3, v, unit_effect(sq), Leg::B);
                if (!is_pure(sq, ma)) continue;
                ++pure_count;
                auto dec = product_decomposition_if_pure_marginal(ctx, v);
                if (!dec) {
                  d = "pure marginal but no decomposition";
                  return false;
                }
                if ((kron(dec->first, dec->second) - v).lpNorm<Eigen::Infinity>() > 1e-7) {
                  d = "decomposition does not rebuild the vertex";
                  return false;
                }
              }
              if (pure_count != 16) {
                d = "expected 16 product vertices, saw " + std::to_string(pure_count);
                return false;
              }
              return true;
            });

  criterion(8, "data-driven certification agrees with the joint-measurement LP",
            [](std::string& d) {
              std::mt19937 rng(303);
              StateSpace sq = boxworld_square();
              EffectAlgebra ea = effect_algebra(sq);
              for (int t = 0; t < 50; ++t) {
                Effect f = random_effect(ea, rng);
                Effect g = random_effect(ea, rng);
                Measurement m1 =
                    measurement_from_effects(sq, {f, Vector(unit_effect(sq) - f)}, kEqTol);
                Measurement m2 =
                    measurement_from_effects(sq, {g, Vector(unit_effect(sq) - g)}, kEqTol);
                bool compat = measurements_compatible(m1, m2).compatible;
                bool certified = certify_incompatibility(m1.underlying, m2.underlying,
                                                         sq.vertices, TensorRule::Min);
                if (compat == certified) {
                  d = "disagreement at trial " + std::to_string(t);
                  return false;
                }
              }
              return true;
            });

  criterion(9, "qubit closed form tracks a dense sphere-grid oracle", [](std::string& d) {
    std::mt19937 rng(404);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double pi = std::acos(-1.0);
    const int steps = 45;  // ~4000 grid effects
    for (int t = 0; t < 100; ++t) {
      Vector w0(3), w1(3);
      for (int i = 0; i < 3; ++i) {
        w0(i) = g(rng);
        w1(i) = g(rng);
      }
      if (w0.norm() > 1.0) w0 /= w0.norm();
      if (w1.norm() > 1.0) w1 /= w1.norm();
      double lam = u(rng);
      double grid = std::max(lam, 1.0 - lam);
      for (int i = 0; i <= steps; ++i)
        for (int j = 0; j < 2 * steps; ++j) {
          double th = pi * i / steps, ph = pi * j / steps;
          Vector v(3);
          v << std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th);
          double val = lam * (0.5 + 0.5 * v.dot(w0) / 1.0) -
                       (1.0 - lam) * (0.5 + 0.5 * v.dot(w1)) + (1.0 - lam);
          grid = std::max(grid, val);
        }
      double closed = qubit::discriminate(w0, w1, lam).p_succ;
      if (closed < grid - 1e-9 || closed - grid > 2e-3) {
        d = "gap " + std::to_string(closed - grid);
        return false;
      }
    }
    qubit::Discrimination r = qubit::discriminate(to_vector({1, 0, 0}), to_vector({0, 0, 1}), 0.5);
    if (std::abs(r.p_succ - 0.853553) > 1e-6) {
      d = "orthogonal pure pair: " + std::to_string(r.p_succ);
      return false;
    }
    return true;
  });

  criterion(10, "square symmetries have the right orders", [](std::string& d) {
    Matrix r = boxworld::rotation().matrix;
    Matrix m = boxworld::reflection().matrix;
    Matrix id = Matrix::Identity(3, 3);
    if ((r * r * r * r - id).lpNorm<Eigen::Infinity>() > 1e-12) {
      d = "R^4 != id";
      return false;
    }
    if ((m * m - id).lpNorm<Eigen::Infinity>() > 1e-12) {
      d = "M^2 != id";
      return false;
    }
    return true;
  });

  criterion(11, "post-processing is a preorder separating the boxworld readouts",
            [](std::string& d) {
              std::mt19937 rng(505);
              for (int t = 0; t < 100; ++t) {
                Channel ch = random_square_channel(rng);
                if (!is_post_processing_of(ch, ch)) {
                  d = "reflexivity failed at trial " + std::to_string(t);
                  return false;
                }
              }
              for (int t = 0; t < 50; ++t) {
                Channel coarse = random_square_channel(rng);
                Channel mid = compose(random_square_channel(rng), coarse);
                Channel fine = compose(random_square_channel(rng), mid);
                if (!is_post_processing_of(mid, coarse) || !is_post_processing_of(fine, mid) ||
                    !is_post_processing_of(fine, coarse)) {
                  d = "transitivity failed at trial " + std::to_string(t);
                  return false;
                }
              }
              Channel cx = boxworld::fx_measurement().underlying;
              Channel cy = boxworld::fy_measurement().underlying;
              if (is_post_processing_of(cx, cy) || is_post_processing_of(cy, cx)) {
                d = "fx and fy readouts wrongly comparable";
                return false;
              }
              return true;
            });

  criterion(12, "command-line output is byte-identical across repeated runs",
            [](std::string& d) {
              if (cli_path.empty()) {
                d = "no --cli path given";
                return false;
              }
              std::vector<std::string> cmds = {
                  "info --space square",
                  "info --space polygon:7",
                  "basenorm --space polygon:5 --psi 0.3,-0.2,1",
                  "discriminate --space square --x0 s00 --x1 center --lambda 0.5",
                  "tensor separable --a square --b square --phi x0",
                  "compat measurements --m1 fx --m2 fy",
                  "compat robustness --m1 fx --m2 fy",
                  "qubit discriminate --w0 1,0,0 --w1 0,0,1 --lambda 0.5",
              };
              for (const std::string& c : cmds) {
                std::string a, b;
                if (!run_cli(c, a) || !run_cli(c, b)) {
                  d = "nonzero exit: " + c;
                  return false;
                }
                if (a.empty() || a != b) {
                  d = "output differs or empty: " + c;
                  return false;
                }
              }
              return true;
            });

  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
