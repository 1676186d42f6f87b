#include "gptkit/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gptkit/models.hpp"

namespace gpt {
namespace io {

double round_sig(double x) {
  if (!std::isfinite(x)) throw Error(Err::NonFinite, "cannot serialize non-finite value");
  if (x == 0.0) return 0.0;  // normalizes -0.0 as well
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(round_sig(v(i)));
  return arr;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw Error(Err::SchemaError, "expected a non-empty array of numbers");
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(Err::SchemaError, "expected a number");
    v(static_cast<int>(i)) = j[i].get<double>();
  }
  return v;
}

json to_json(const StateSpace& k) {
  json j;
  j["format"] = kFormat;
  j["type"] = "state_space";
  j["name"] = k.name;
  j["lifted_dim"] = k.lifted_dim;
  json verts = json::array();
  for (const Vector& v : k.vertices) verts.push_back(vector_to_json(v));
  j["vertices"] = verts;
  return j;
}

namespace {

void check_header(const json& j, const std::string& type) {
  if (!j.is_object()) throw Error(Err::SchemaError, "expected a JSON object");
  if (j.value("format", std::string()) != kFormat)
    throw Error(Err::SchemaError, "unsupported format (want " + std::string(kFormat) + ")");
  if (j.value("type", std::string()) != type)
    throw Error(Err::SchemaError, "expected type \"" + type + "\"");
}

}  // namespace

StateSpace state_space_from_json(const json& j) {
  check_header(j, "state_space");
  if (!j.contains("vertices")) throw Error(Err::SchemaError, "state space needs vertices");
  std::vector<Vector> verts;
  for (const json& vj : j.at("vertices")) verts.push_back(vector_from_json(vj));
  StateSpace k = from_lifted_vertices(std::move(verts), j.value("name", "custom"));
  if (j.contains("lifted_dim") && j.at("lifted_dim").get<int>() != k.lifted_dim)
    throw Error(Err::SchemaError, "lifted_dim does not match the vertices");
  return k;
}

json to_json(const Channel& ch) {
  json j;
  j["format"] = kFormat;
  j["type"] = "channel";
  j["domain"] = to_json(ch.domain);
  j["codomain"] = to_json(ch.codomain);
  json rows = json::array();
  for (int r = 0; r < ch.matrix.rows(); ++r)
    rows.push_back(vector_to_json(ch.matrix.row(r).transpose()));
  j["matrix"] = rows;
  return j;
}

Channel channel_from_json(const json& j) {
  check_header(j, "channel");
  StateSpace dom = j.at("domain").is_string() ? resolve_space(j.at("domain").get<std::string>())
                                              : state_space_from_json(j.at("domain"));
  StateSpace cod = j.at("codomain").is_string()
                       ? resolve_space(j.at("codomain").get<std::string>())
                       : state_space_from_json(j.at("codomain"));
  const json& rows = j.at("matrix");
  if (!rows.is_array() || rows.empty()) throw Error(Err::SchemaError, "channel needs a matrix");
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (size_t r = 0; r < rows.size(); ++r) {
    Vector row = vector_from_json(rows[r]);
    if (row.size() != m.cols()) throw Error(Err::SchemaError, "ragged channel matrix");
    m.row(static_cast<int>(r)) = row.transpose();
  }
  return validate_channel(m, dom, cod);
}

json to_json(const Measurement& m) {
  json j;
  j["format"] = kFormat;
  j["type"] = "measurement";
  j["space"] = to_json(m.space);
  json effs = json::array();
  for (const Effect& f : m.effects) effs.push_back(vector_to_json(f));
  j["effects"] = effs;
  return j;
}

Measurement measurement_from_json(const json& j) {
  check_header(j, "measurement");
  StateSpace k = j.at("space").is_string() ? resolve_space(j.at("space").get<std::string>())
                                           : state_space_from_json(j.at("space"));
  std::vector<Effect> effs;
  for (const json& ej : j.at("effects")) effs.push_back(vector_from_json(ej));
  return measurement_from_effects(k, effs, kEqTol);
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Err::SchemaError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(Err::SchemaError, std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return j;
}

StateSpace resolve_space(const std::string& spec) {
  std::string s = spec;
  if (s.rfind("builtin:", 0) == 0) s = s.substr(8);
  if (s == "square") return boxworld_square();
  if (s.rfind("simplex:", 0) == 0) return simplex(std::atoi(s.c_str() + 8));
  if (s.rfind("polygon:", 0) == 0) return regular_polygon(std::atoi(s.c_str() + 8));
  return state_space_from_json(load_json_file(spec));
}

Vector parse_csv(const std::string& spec) {
  std::vector<double> xs;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t pos = 0;
      xs.push_back(std::stod(tok, &pos));
      while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(Err::SchemaError, "not a number: \"" + tok + "\"");
    }
  }
  if (xs.empty()) throw Error(Err::SchemaError, "empty coordinate list");
  return to_vector(xs);
}

Vector resolve_vector(const StateSpace& k, const std::string& spec) {
  if (spec == "center") return barycenter(k);
  if (spec == "unit") return unit_effect(k);
  if (k.name == "square") {
    if (spec == "s00") return boxworld::s00();
    if (spec == "s10") return boxworld::s10();
    if (spec == "s01") return boxworld::s01();
    if (spec == "s11") return boxworld::s11();
    if (spec == "fx") return boxworld::fx();
    if (spec == "fy") return boxworld::fy();
  }
  if (spec.size() >= 2 && spec[0] == 's' && std::isdigit(static_cast<unsigned char>(spec[1]))) {
    int i = std::atoi(spec.c_str() + 1);
    if (i >= 1 && i <= static_cast<int>(k.vertices.size())) return k.vertices[i - 1];
  }
  return parse_csv(spec);
}

Channel resolve_channel(const std::string& spec) {
  if (spec == "R") return boxworld::rotation();
  if (spec == "M") return boxworld::reflection();
  return channel_from_json(load_json_file(spec));
}

Measurement resolve_measurement(const std::string& spec) {
  if (spec == "fx") return boxworld::fx_measurement();
  if (spec == "fy") return boxworld::fy_measurement();
  return measurement_from_json(load_json_file(spec));
}

}  // namespace io
}  // namespace gpt
