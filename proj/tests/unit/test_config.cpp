#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "cqm/config.hpp"

using namespace cqm::config;
using nlohmann::json;

TEST_CASE("numbers and fractions") {
  CHECK(parse_number("0.25") == 0.25);
  CHECK(parse_number("1e-3") == 1e-3);
  CHECK(parse_number("1/3") == doctest::Approx(1.0 / 3.0));
  CHECK(parse_number("-2/3") == doctest::Approx(-2.0 / 3.0));
  CHECK(parse_number("+4") == 4.0);
  CHECK_THROWS_AS(parse_number("abc"), ConfigError);
  CHECK_THROWS_AS(parse_number("1/0"), ConfigError);
  CHECK_THROWS_AS(parse_number("1.5x"), ConfigError);
  CHECK_THROWS_AS(parse_number(""), ConfigError);
}

TEST_CASE("defaults are valid") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.q == doctest::Approx(1.0 / 3.0));
  CHECK(cfg.gamma == -2.0);
  CHECK(cfg.format == OutputFormat::Csv);
}

TEST_CASE("merge applies nested keys and rejects unknown ones") {
  RunConfig cfg;
  cfg.merge(json::parse(R"({"alpha": 0.5, "q": "2/3", "shape": "two-quark",
                            "grid": {"spacing": "lin", "lo": 0, "hi": 2, "count": 5},
                            "tolerance": {"rel": 1e-8}, "format": "json", "K": -1.5})"));
  CHECK(cfg.model.alpha == 0.5);
  CHECK(cfg.q == doctest::Approx(2.0 / 3.0));
  CHECK(cfg.shape.kind == "two-quark");
  CHECK(cfg.grid.spacing == cqm::potentials::GridSpacing::Linear);
  CHECK(cfg.grid.count == 5);
  CHECK(cfg.tolerance.rel == 1e-8);
  CHECK(cfg.format == OutputFormat::Json);
  CHECK(cfg.coeffs.K == -1.5);
  CHECK_NOTHROW(cfg.validate());

  CHECK_THROWS_AS(RunConfig{}.merge(json::parse(R"({"alpah": 1})")), ConfigError);
  CHECK_THROWS_AS(RunConfig{}.merge(json::parse(R"({"grid": {"size": 3}})")), ConfigError);
  CHECK_THROWS_AS(RunConfig{}.merge(json::parse(R"({"alpha": true})")), ConfigError);
  CHECK_THROWS_AS(RunConfig{}.merge(json::parse(R"({"grid": 3})")), ConfigError);
  CHECK_THROWS_AS(RunConfig{}.merge(json::parse(R"([1, 2])")), ConfigError);
  CHECK_THROWS_AS(RunConfig{}.merge(json::parse(R"({"format": "xml"})")), ConfigError);
  CHECK_THROWS_AS(RunConfig{}.merge(json::parse(R"({"m": 2.5})")), ConfigError);
}

TEST_CASE("gamma_sq sets the confining sign") {
  RunConfig cfg;
  cfg.set("gamma_sq", json(4.0));
  CHECK(cfg.gamma == -2.0);
  CHECK_THROWS_AS(cfg.set("gamma_sq", json(-1.0)), ConfigError);
}

TEST_CASE("validation failures") {
  RunConfig a;
  a.model.s = -1.0;
  CHECK_THROWS_AS(a.validate(), ConfigError);
  RunConfig b;
  b.q = 0.0;
  CHECK_THROWS_AS(b.validate(), ConfigError);
  RunConfig c;
  c.shape.kind = "four-quark";
  CHECK_THROWS_AS(c.validate(), ConfigError);
  RunConfig d;
  d.shape.kind = "custom";
  d.shape.coeffs = {0.0, 1.0};
  d.shape.m = 3;  // needs m > deg + 2
  CHECK_THROWS_AS(d.validate(), ConfigError);
  d.shape.m = 4;
  CHECK_NOTHROW(d.validate());
  RunConfig e;
  e.jobs = 0;
  CHECK_THROWS_AS(e.validate(), ConfigError);
  RunConfig f;
  f.n = 0.5;
  CHECK_THROWS_AS(f.validate(), ConfigError);
}

TEST_CASE("custom coefficients from a comma list") {
  RunConfig cfg;
  cfg.set("coeffs", json("1,0,2/3"));
  REQUIRE(cfg.shape.coeffs.size() == 3);
  CHECK(cfg.shape.coeffs[2] == doctest::Approx(2.0 / 3.0));
  cfg.set("coeffs", json::parse("[4, 5]"));
  CHECK(cfg.shape.coeffs.size() == 2);
}

TEST_CASE("every documented key is accepted") {
  for (const auto& key : known_keys()) {
    RunConfig cfg;
    json v = 2.0;
    if (key == "shape") v = "single";
    if (key == "grid.spacing") v = "log";
    if (key == "format") v = "csv";
    if (key == "out" || key == "golden") v = "x";
    if (key == "coeffs") v = json::array({1.0});
    CHECK_NOTHROW(cfg.set(key, v));
  }
}

TEST_CASE("config file loading") {
  const std::string path = "test_config_tmp.json";
  {
    std::ofstream f(path);
    f << R"({"s": 2, "lambda": 0.5})";
  }
  const auto cfg = load_config_file(path);
  CHECK(cfg.model.s == 2.0);
  CHECK(cfg.model.lambda_amp == 0.5);
  {
    std::ofstream f(path);
    f << "{not json";
  }
  CHECK_THROWS_AS(load_config_file(path), ConfigError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config_file("does/not/exist.json"), ConfigError);
}
