#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "offshell/error.hpp"
#include "offshell/records.hpp"
#include "offshell/verify.hpp"

using namespace offshell;

TEST_CASE("FNV-1a reference vectors") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("config hash ignores key order and whitespace") {
  CHECK(config_hash(R"({"a":1,"b":[1,2]})") == config_hash(R"({ "b": [1, 2], "a": 1 })"));
  CHECK(config_hash(R"({"a":1})") != config_hash(R"({"a":2})"));
  CHECK_THROWS_AS(config_hash("{"), Error);
}

TEST_CASE("CSV and JSON records") {
  Record r;
  r.t = 2;
  r.r = 1;
  r.tau = 1;
  r.q = 2;
  r.region = "TIMELIKE5";
  r.variant = "CANONICAL";
  r.value = 0.5;
  Record m = r;
  m.value.reset();
  m.flags = "cone";
  std::ostringstream csv;
  write_csv(csv, {r, m}, R"({"x":1})");
  const std::string s = csv.str();
  CHECK(s.rfind("# offshell_gf ", 0) == 0);
  CHECK(s.find(std::string(kCsvColumns)) != std::string::npos);
  CHECK(s.find("CANONICAL,,0,cone") != std::string::npos);
  std::ostringstream js;
  write_json(js, {r, m}, R"({"x":1})");
  const auto doc = nlohmann::json::parse(js.str());
  CHECK(doc["records"][1]["value"].is_null());
  CHECK(doc["records"][0]["value"] == 0.5);
  CHECK(doc["config_hash"] == config_hash(R"({"x":1})"));
}

TEST_CASE("verify config round trip and validation") {
  VerifyConfig c;
  c.seed = 42;
  c.quad.grid = 64;
  const auto back = VerifyConfig::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
  CHECK(VerifyConfig::from_json("{}").to_json() == VerifyConfig{}.to_json());
  CHECK_THROWS_AS(VerifyConfig::from_json(R"({"pde_n": 3})"), Error);
  CHECK_THROWS_AS(VerifyConfig::from_json("[1]"), Error);
}

TEST_CASE("single-coefficient fit") {
  const auto [c, res] = fit_one({1, 2, 3}, {2, 4, 6});
  CHECK(c == doctest::Approx(2.0));
  CHECK(res == doctest::Approx(0.0));
}

TEST_CASE("identities suite passes and is reproducible") {
  VerifyConfig c;
  c.n_pairs = 10;
  const auto a = run_suite("identities", c);
  CHECK(a.passed());
  CHECK(run_suite("identities", c).to_json(c) == a.to_json(c));
  CHECK_THROWS_AS(run_suite("nope", c), Error);
}
