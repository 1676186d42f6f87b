#include <doctest.h>

#include "gptkit/io.hpp"
#include "gptkit/models.hpp"

using namespace gpt;
namespace gio = gpt::io;

TEST_CASE("round_sig is idempotent and stable") {
  CHECK(gio::round_sig(0.0) == 0.0);
  CHECK(gio::round_sig(-0.0) == 0.0);
  CHECK(gio::round_sig(1.0 / 3.0) == gio::round_sig(gio::round_sig(1.0 / 3.0)));
  CHECK(gio::round_sig(0.1 + 0.2) == gio::round_sig(0.3));
  CHECK_THROWS_AS(gio::round_sig(std::nan("")), Error);
}

TEST_CASE("state space JSON roundtrip") {
  StateSpace sq = boxworld_square();
  gio::json j = gio::to_json(sq);
  CHECK(j["format"] == "gptkit/1");
  StateSpace back = gio::state_space_from_json(j);
  CHECK(same_space(sq, back));
  CHECK(back.name == "square");

  j["lifted_dim"] = 7;
  CHECK_THROWS_AS(gio::state_space_from_json(j), Error);
  gio::json bad;
  bad["format"] = "gptkit/1";
  bad["type"] = "state_space";
  CHECK_THROWS_AS(gio::state_space_from_json(bad), Error);
}

TEST_CASE("channel JSON roundtrip") {
  Channel r = boxworld::rotation();
  Channel back = gio::channel_from_json(gio::to_json(r));
  CHECK((back.matrix - r.matrix).lpNorm<Eigen::Infinity>() <= 1e-12);
  CHECK(same_space(back.domain, r.domain));
}

TEST_CASE("measurement JSON roundtrip") {
  Measurement m = boxworld::fx_measurement();
  Measurement back = gio::measurement_from_json(gio::to_json(m));
  REQUIRE(back.effects.size() == 2);
  CHECK((back.effects[0] - m.effects[0]).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("builtin space resolution") {
  CHECK(gio::resolve_space("square").name == "square");
  CHECK(gio::resolve_space("builtin:square").vertices.size() == 4);
  CHECK(gio::resolve_space("simplex:3").vertices.size() == 3);
  CHECK(gio::resolve_space("polygon:5").vertices.size() == 5);
  CHECK_THROWS_AS(gio::resolve_space("no/such/file.json"), Error);
}

TEST_CASE("vector resolution") {
  StateSpace sq = gio::resolve_space("square");
  CHECK((gio::resolve_vector(sq, "s00") - boxworld::s00()).norm() == 0.0);
  CHECK((gio::resolve_vector(sq, "fx") - boxworld::fx()).norm() == 0.0);
  CHECK((gio::resolve_vector(sq, "center") - barycenter(sq)).norm() == 0.0);
  CHECK((gio::resolve_vector(sq, "0.5, 0.25,1") - to_vector({0.5, 0.25, 1})).norm() == 0.0);
  StateSpace s3 = gio::resolve_space("simplex:3");
  CHECK((gio::resolve_vector(s3, "s2") - s3.vertices[1]).norm() == 0.0);
  CHECK_THROWS_AS(gio::parse_csv("1,two,3"), Error);
  CHECK_THROWS_AS(gio::parse_csv(""), Error);
}

TEST_CASE("builtin channels and measurements") {
  CHECK((gio::resolve_channel("R").matrix - boxworld::rotation().matrix).norm() == 0.0);
  CHECK((gio::resolve_channel("M").matrix - boxworld::reflection().matrix).norm() == 0.0);
  CHECK(gio::resolve_measurement("fy").effects.size() == 2);
}

TEST_CASE("serialization is byte-identical across calls") {
  StateSpace p = regular_polygon(7);
  CHECK(gio::to_json(p).dump() == gio::to_json(p).dump());
}
