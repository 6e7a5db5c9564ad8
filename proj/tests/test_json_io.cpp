#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <string>

#include "qcrb/errors.hpp"
#include "qcrb/json_io.hpp"

using namespace qcrb;

TEST_CASE("doubles round-trip through 17 significant digits", "[json]") {
  for (double v : {1.0, -0.1, 4.0 / 3.0, 1e-300, 3.141592653589793,
                   -2.2250738585072014e-308, 12345.678901234567}) {
    const std::string text = format_double(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.0) == "1");
}

TEST_CASE("objects keep key order and escape strings", "[json]") {
  JsonObject o;
  o.add_number("b", 0.5);
  o.add_string("a", "line\nbreak \"quoted\"");
  o.add_bool("c", true);
  o.add_null("d");
  o.add_int("e", -3);
  CHECK(o.str() ==
        "{\"b\":0.5,\"a\":\"line\\nbreak \\\"quoted\\\"\",\"c\":true,"
        "\"d\":null,\"e\":-3}");
}

TEST_CASE("arrays and matrices render compactly", "[json]") {
  CHECK(json_number_array({1.0, 2.5}) == "[1,2.5]");
  CHECK(json_string_array({"x", "y"}) == "[\"x\",\"y\"]");
  CHECK(json_matrix({1.0, 0.0, 0.0, 2.0}, 2) == "[[1,0],[0,2]]");
}

TEST_CASE("parameter files parse with validation", "[json]") {
  const StateParams p =
      params_from_json("{\"alpha\": 1.5, \"r\": -0.3, \"n_th\": 0.2}");
  CHECK(p.alpha == 1.5);
  CHECK(p.r == -0.3);
  CHECK(p.n_th == 0.2);
  CHECK(p.psi == 0.0);
  CHECK(p.chi == 0.0);

  CHECK_THROWS_AS(params_from_json("{\"alpha\": 1.5,"), DomainError);
  CHECK_THROWS_AS(params_from_json("[1, 2]"), DomainError);
  CHECK_THROWS_AS(params_from_json("{\"alpha\": \"big\"}"), DomainError);
  CHECK_THROWS_AS(params_from_json("{\"amplitude\": 1.0}"), DomainError);
}

TEST_CASE("information matrices serialize with their labels", "[json]") {
  FisherMatrix m;
  m.labels = {"alpha", "psi"};
  m.entries = {4.0, 0.0, 0.0, 16.0};
  CHECK(to_json(m) ==
        "{\"labels\":[\"alpha\",\"psi\"],\"entries\":[[4,0],[0,16]]}");
}
