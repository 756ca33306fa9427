#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tripod/config.hpp"
#include "tripod/errors.hpp"
#include "tripod/params.hpp"

using namespace tripod;
using std::numbers::pi;

TEST_SUITE("params") {

TEST_CASE("validation rejects non-physical input") {
  LatticeParams p;
  p.eps = 0.0;
  CHECK_THROWS_WITH_AS(validate(p), "eps must be positive", ValidationError);
  p = {};
  p.eps = -1.0;
  CHECK_THROWS_AS(validate(p), ValidationError);
  p = {};
  p.gamma = -1.0;
  CHECK_THROWS_AS(validate(p), ValidationError);
  p = {};
  p.n_q = 17;
  CHECK_THROWS_AS(validate(p), ValidationError);
  p = {};
  p.a = 2.0;
  CHECK_THROWS_AS(validate(p), ValidationError);
  p = {};
  p.omega_p = std::nan("");
  CHECK_THROWS_AS(validate(p), ValidationError);
}

TEST_CASE("kinetic prefactor follows from E_R = 1 and a = 1") {
  CHECK(kKineticPrefactor == doctest::Approx(1.0 / (pi * pi)).epsilon(1e-15));
}

TEST_CASE("alpha folding into [0, pi/2]") {
  LatticeParams p;
  p.alpha = -pi / 6;
  auto v = validate(p);
  CHECK(v.alpha == doctest::Approx(pi / 6));
  CHECK(v.alpha_fold.mirrored);
  CHECK_FALSE(v.alpha_fold.reflected);
  CHECK(v.alpha_fold.raw == doctest::Approx(-pi / 6));

  p.alpha = 2.0 * pi / 3;
  v = validate(p);
  CHECK(v.alpha == doctest::Approx(pi / 3));
  CHECK(v.alpha_fold.reflected);

  p.alpha = 2.0 * pi + pi / 4;
  v = validate(p);
  CHECK(v.alpha == doctest::Approx(pi / 4));

  // idempotent
  CHECK(validate(v) == v);
}

TEST_CASE("eps_tilde at the ends of the alpha range") {
  LatticeParams p;
  p.eps = 0.1;
  CHECK(p.eps_tilde() == doctest::Approx(0.1).epsilon(1e-14));
  p.alpha = pi / 2;
  CHECK(p.eps_tilde() == doctest::Approx(0.1 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("extended zone grid") {
  const auto q = extended_zone_grid(16);
  REQUIRE(q.size() == 16);
  CHECK(q.back() == doctest::Approx(2 * pi));
  CHECK(q.front() == doctest::Approx(-2 * pi + pi / 4));
  CHECK(q[7] == doctest::Approx(0.0));
}

TEST_CASE("angle parsing") {
  CHECK(parse_angle("45deg") == doctest::Approx(pi / 4));
  CHECK(parse_angle("0.5") == doctest::Approx(0.5));
  CHECK(parse_angle("-90deg") == doctest::Approx(-pi / 2));
  CHECK_THROWS_AS(parse_angle("45 degrees"), ValidationError);
  CHECK_THROWS_AS(parse_angle("abc"), ValidationError);
}

TEST_CASE("config keys are strict") {
  auto p = params_from_json(nlohmann::json::parse(R"({"eps": 0.08, "alpha": "30deg", "n_q": 32})"));
  CHECK(p.eps == 0.08);
  CHECK(p.alpha == doctest::Approx(pi / 6));
  CHECK(p.n_q == 32);
  CHECK(p.omega_p == 2000.0);  // default kept

  CHECK_THROWS_AS(params_from_json(nlohmann::json::parse(R"({"epsilon": 0.1})")), ValidationError);
  CHECK_THROWS_AS(params_from_json(nlohmann::json::parse(R"({"eps": "0.1"})")), ValidationError);
  CHECK_THROWS_AS(params_from_json(nlohmann::json::parse(R"({"n_q": 32.5})")), ValidationError);
  CHECK_THROWS_AS(params_from_json(nlohmann::json::parse(R"([1, 2])")), ValidationError);
  CHECK_THROWS_AS(params_from_json(nlohmann::json::parse(R"({"eps": -1})")), ValidationError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ValidationError);
}

}
