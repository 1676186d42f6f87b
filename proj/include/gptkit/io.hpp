#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "gptkit/channels.hpp"
#include "gptkit/state_space.hpp"
#include "gptkit/types.hpp"

namespace gpt {
namespace io {

// Insertion-ordered JSON so serialized output is byte-stable.
using json = nlohmann::ordered_json;

inline constexpr const char* kFormat = "gptkit/1";

// Round to 12 significant digits; applied to every emitted double so that
// repeated runs produce identical bytes.
double round_sig(double x);

json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j);

json to_json(const StateSpace& k);
StateSpace state_space_from_json(const json& j);

json to_json(const Channel& ch);
Channel channel_from_json(const json& j);

json to_json(const Measurement& m);
Measurement measurement_from_json(const json& j);

// Builtin space names: "square", "simplex:N", "polygon:K" (with or without a
// "builtin:" prefix); anything else is parsed as a path to a JSON file.
StateSpace resolve_space(const std::string& spec);

// Named states/effects of the builtin spaces (s00..s11, center, fx, fy, unit,
// s1..sN) or a comma-separated coordinate list.
Vector resolve_vector(const StateSpace& k, const std::string& spec);

// Comma-separated doubles, no space resolution.
Vector parse_csv(const std::string& spec);

// Builtin channels "R" and "M" on the square, or a JSON file path.
Channel resolve_channel(const std::string& spec);

// Builtin measurements "fx"/"fy" on the square, "pointer" (vertex readout)
// on simplices, or a JSON file path.
Measurement resolve_measurement(const std::string& spec);

json load_json_file(const std::string& path);

}  // namespace io
}  // namespace gpt
