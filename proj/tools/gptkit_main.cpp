#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <string>

#include "gptkit/compatibility.hpp"
#include "gptkit/io.hpp"
#include "gptkit/models.hpp"
#include "gptkit/norms.hpp"
#include "gptkit/qubit.hpp"

using gpt::io::json;

namespace {

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

gpt::TensorRule parse_rule(const std::string& r) {
  if (r == "min") return gpt::TensorRule::Min;
  if (r == "max") return gpt::TensorRule::Max;
  throw gpt::Error(gpt::Err::SchemaError, "rule must be min or max");
}

// Semicolon-separated list of vector specs (named or comma-separated).
std::vector<gpt::Vector> parse_vector_list(const gpt::StateSpace& k, const std::string& spec) {
  std::vector<gpt::Vector> out;
  std::string rest = spec;
  while (!rest.empty()) {
    size_t pos = rest.find(';');
    out.push_back(gpt::io::resolve_vector(k, rest.substr(0, pos)));
    if (pos == std::string::npos) break;
    rest = rest.substr(pos + 1);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gptkit: polytope state spaces, channels and compatibility tests"};
  app.require_subcommand(1);

  double tol = gpt::kSignTol;
  if (const char* env = std::getenv("GPTKIT_TOL")) tol = std::atof(env);
  unsigned seed = 0;
  app.add_option("--tol", tol, "numerical tolerance");
  app.add_option("--seed", seed, "seed for randomized subcommands");

  std::string space_s, a_s, b_s, d_s, psi_s, phi_s, x0_s, x1_s, rule_s = "max";
  std::string m1_s, m2_s, c1_s, c2_s, e1_s, e2_s, file_s, first_s, second_s;
  std::string fine_s, coarse_s, states_s, xad_s, w0_s, w1_s;
  double lambda = 0.5;

  // info
  CLI::App* info = app.add_subcommand("info", "describe a state space");
  info->add_option("--space", space_s)->required();
  info->callback([&] {
    gpt::StateSpace k = gpt::io::resolve_space(space_s);
    json j = gpt::io::to_json(k);
    j["is_simplex"] = gpt::is_simplex(k);
    emit(j);
  });

  // basenorm
  CLI::App* basenorm = app.add_subcommand("basenorm", "base norm of a functional");
  basenorm->add_option("--space", space_s)->required();
  basenorm->add_option("--psi", psi_s)->required();
  basenorm->callback([&] {
    gpt::StateSpace k = gpt::io::resolve_space(space_s);
    gpt::Vector psi = gpt::io::resolve_vector(k, psi_s);
    json j;
    j["base_norm"] = gpt::io::round_sig(gpt::base_norm(k, psi, tol));
    emit(j);
  });

  // discriminate
  CLI::App* disc = app.add_subcommand("discriminate", "optimal two-state discrimination");
  disc->add_option("--space", space_s)->required();
  disc->add_option("--x0", x0_s)->required();
  disc->add_option("--x1", x1_s)->required();
  disc->add_option("--lambda", lambda)->required();
  disc->callback([&] {
    gpt::StateSpace k = gpt::io::resolve_space(space_s);
    gpt::DiscriminationResult r = gpt::discrimination_probability(
        k, gpt::io::resolve_vector(k, x0_s), gpt::io::resolve_vector(k, x1_s), lambda, tol);
    json j;
    j["p_succ"] = gpt::io::round_sig(r.p_succ);
    j["base_norm"] = gpt::io::round_sig(r.base_norm_value);
    j["optimal_effect"] = gpt::io::vector_to_json(r.optimal_effect);
    emit(j);
  });

  // tensor
  CLI::App* tensor = app.add_subcommand("tensor", "bipartite state sets");
  CLI::App* tverts = tensor->add_subcommand("vertices", "enumerate tensor product vertices");
  tverts->add_option("--a", a_s)->required();
  tverts->add_option("--b", b_s)->required();
  tverts->add_option("--rule", rule_s);
  tverts->callback([&] {
    gpt::StateSpace a = gpt::io::resolve_space(a_s), b = gpt::io::resolve_space(b_s);
    gpt::StateSpace t = parse_rule(rule_s) == gpt::TensorRule::Min
                            ? gpt::min_tensor(a, b)
                            : gpt::max_tensor_vertices(a, b);
    json j = gpt::io::to_json(t);
    j["count"] = t.vertices.size();
    emit(j);
  });
  CLI::App* tcont = tensor->add_subcommand("contains", "membership in a tensor product");
  tcont->add_option("--a", a_s)->required();
  tcont->add_option("--b", b_s)->required();
  tcont->add_option("--phi", phi_s)->required();
  tcont->add_option("--rule", rule_s);
  tcont->callback([&] {
    gpt::StateSpace a = gpt::io::resolve_space(a_s), b = gpt::io::resolve_space(b_s);
    gpt::Vector phi = phi_s == "x0" && a.name == "square" && b.name == "square"
                          ? gpt::boxworld::pr_state()
                          : gpt::io::parse_csv(phi_s);
    bool in = parse_rule(rule_s) == gpt::TensorRule::Max
                  ? gpt::max_tensor_contains(a, b, phi, tol)
                  : gpt::contains(gpt::min_tensor(a, b), phi, tol);
    json j;
    j["contains"] = in;
    emit(j);
  });
  CLI::App* tsep = tensor->add_subcommand("separable", "separability with witness");
  tsep->add_option("--a", a_s)->required();
  tsep->add_option("--b", b_s)->required();
  tsep->add_option("--phi", phi_s)->required();
  tsep->callback([&] {
    gpt::StateSpace a = gpt::io::resolve_space(a_s), b = gpt::io::resolve_space(b_s);
    gpt::Vector phi = phi_s == "x0" && a.name == "square" && b.name == "square"
                          ? gpt::boxworld::pr_state()
                          : gpt::io::parse_csv(phi_s);
    gpt::SeparabilityResult r = gpt::is_separable(a, b, phi, tol);
    json j;
    j["separable"] = r.separable;
    if (r.separable)
      j["coefficients"] = gpt::io::vector_to_json(r.coefficients);
    else
      j["witness"] = gpt::io::vector_to_json(r.witness);
    emit(j);
  });

  // channel
  CLI::App* channel = app.add_subcommand("channel", "channel operations");
  CLI::App* cval = channel->add_subcommand("validate", "check a channel file");
  cval->add_option("--file", file_s)->required();
  cval->callback([&] {
    gpt::Channel ch = gpt::io::resolve_channel(file_s);
    json j;
    j["valid"] = true;
    j["domain"] = ch.domain.name;
    j["codomain"] = ch.codomain.name;
    emit(j);
  });
  CLI::App* ccomp = channel->add_subcommand("compose", "compose two channels");
  ccomp->add_option("--first", first_s)->required();
  ccomp->add_option("--second", second_s)->required();
  ccomp->callback([&] {
    gpt::Channel ch = gpt::compose(gpt::io::resolve_channel(second_s),
                                   gpt::io::resolve_channel(first_s));
    emit(gpt::io::to_json(ch));
  });
  CLI::App* cpost = channel->add_subcommand("postproc", "post-processing order test");
  cpost->add_option("--fine", fine_s)->required();
  cpost->add_option("--coarse", coarse_s)->required();
  cpost->callback([&] {
    auto lam = gpt::is_post_processing_of(gpt::io::resolve_channel(fine_s),
                                          gpt::io::resolve_channel(coarse_s), tol);
    json j;
    j["post_processing_of"] = lam.has_value();
    if (lam) j["lambda"] = gpt::io::to_json(*lam);
    emit(j);
  });

  // compat
  CLI::App* compat = app.add_subcommand("compat", "compatibility and nonclassicality tests");
  CLI::App* cm = compat->add_subcommand("measurements", "joint measurability");
  cm->add_option("--m1", m1_s)->required();
  cm->add_option("--m2", m2_s)->required();
  cm->callback([&] {
    gpt::Measurement m1 = gpt::io::resolve_measurement(m1_s);
    gpt::Measurement m2 = gpt::io::resolve_measurement(m2_s);
    gpt::MeasurementCompatVerdict v = gpt::measurements_compatible(m1, m2, tol);
    json j;
    j["compatible"] = v.compatible;
    if (v.compatible) {
      json grid = json::array();
      for (const auto& row : v.grid) {
        json r = json::array();
        for (const gpt::Effect& e : row) r.push_back(gpt::io::vector_to_json(e));
        grid.push_back(r);
      }
      j["joint_effects"] = grid;
    } else {
      j["certificate"] = gpt::io::vector_to_json(v.certificate);
    }
    emit(j);
  });
  CLI::App* cr = compat->add_subcommand("robustness", "depolarizing robustness");
  cr->add_option("--m1", m1_s)->required();
  cr->add_option("--m2", m2_s)->required();
  cr->callback([&] {
    double t = gpt::compatibility_robustness(gpt::io::resolve_measurement(m1_s),
                                             gpt::io::resolve_measurement(m2_s), tol);
    json j;
    j["robustness"] = gpt::io::round_sig(t);
    emit(j);
  });
  CLI::App* cc = compat->add_subcommand("channels", "joint channel existence");
  cc->add_option("--c1", c1_s)->required();
  cc->add_option("--c2", c2_s)->required();
  cc->add_option("--rule", rule_s);
  cc->callback([&] {
    gpt::ChannelCompatVerdict v = gpt::channels_compatible(
        gpt::io::resolve_channel(c1_s), gpt::io::resolve_channel(c2_s), parse_rule(rule_s), tol);
    json j;
    j["compatible"] = v.compatible;
    emit(j);
  });
  CLI::App* cb = compat->add_subcommand("broadcast", "universal broadcasting test");
  cb->add_option("--space", space_s)->required();
  cb->add_option("--rule", rule_s);
  cb->callback([&] {
    gpt::StateSpace k = gpt::io::resolve_space(space_s);
    gpt::ChannelCompatVerdict v = gpt::broadcasting_feasible(k, {}, parse_rule(rule_s), tol);
    json j;
    j["feasible"] = v.compatible;
    emit(j);
  });
  CLI::App* ccert = compat->add_subcommand("certify", "data-driven incompatibility certificate");
  ccert->add_option("--c1", c1_s)->required();
  ccert->add_option("--c2", c2_s)->required();
  ccert->add_option("--states", states_s)->required();
  ccert->add_option("--rule", rule_s);
  ccert->callback([&] {
    gpt::Channel c1 = gpt::io::resolve_channel(c1_s);
    json j;
    j["certified_incompatible"] =
        gpt::certify_incompatibility(c1, gpt::io::resolve_channel(c2_s),
                                     parse_vector_list(c1.domain, states_s), parse_rule(rule_s), tol);
    emit(j);
  });
  CLI::App* cs = compat->add_subcommand("steer", "steering test");
  cs->add_option("--c1", c1_s)->required();
  cs->add_option("--c2", c2_s)->required();
  cs->add_option("--d", d_s)->required();
  cs->add_option("--xad", xad_s)->required();
  cs->add_option("--rule", rule_s);
  cs->callback([&] {
    gpt::Channel c1 = gpt::io::resolve_channel(c1_s);
    gpt::StateSpace d = gpt::io::resolve_space(d_s);
    gpt::Vector xad = xad_s == "x0" ? gpt::boxworld::pr_state() : gpt::io::parse_csv(xad_s);
    json j;
    j["steers"] = gpt::steering_check(c1, gpt::io::resolve_channel(c2_s), xad, d,
                                      parse_rule(rule_s), tol);
    emit(j);
  });
  CLI::App* cbell = compat->add_subcommand("bell", "bell nonlocality test");
  cbell->add_option("--c1", c1_s)->required();
  cbell->add_option("--c2", c2_s)->required();
  cbell->add_option("--e1", e1_s)->required();
  cbell->add_option("--e2", e2_s)->required();
  cbell->add_option("--xad", xad_s)->required();
  cbell->add_option("--rule", rule_s);
  cbell->callback([&] {
    gpt::Vector xad = xad_s == "x0" ? gpt::boxworld::pr_state() : gpt::io::parse_csv(xad_s);
    json j;
    j["nonlocal"] = gpt::bell_check(gpt::io::resolve_channel(c1_s), gpt::io::resolve_channel(c2_s),
                                    gpt::io::resolve_channel(e1_s), gpt::io::resolve_channel(e2_s),
                                    xad, parse_rule(rule_s), tol);
    emit(j);
  });

  // qubit
  CLI::App* qb = app.add_subcommand("qubit", "closed-form qubit routines");
  CLI::App* qd = qb->add_subcommand("discriminate", "Helstrom discrimination");
  qd->add_option("--w0", w0_s)->required();
  qd->add_option("--w1", w1_s)->required();
  qd->add_option("--lambda", lambda)->required();
  qd->callback([&] {
    gpt::qubit::Discrimination r = gpt::qubit::discriminate(gpt::io::parse_csv(w0_s),
                                                            gpt::io::parse_csv(w1_s), lambda);
    json j;
    j["p_succ"] = gpt::io::round_sig(r.p_succ);
    j["optimal_effect"] = gpt::io::vector_to_json(r.optimal_effect);
    emit(j);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const gpt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == gpt::Err::NumericalFailure ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
