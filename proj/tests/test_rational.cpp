#include "gmdist/rational.hpp"

#include <doctest.h>

#include <cmath>

using namespace gmdist;

TEST_CASE("ceil and floor round toward the right infinity") {
  CHECK(ceil(make_rational(7, 2)) == 4);
  CHECK(floor(make_rational(7, 2)) == 3);
  CHECK(ceil(make_rational(-7, 2)) == -3);
  CHECK(floor(make_rational(-7, 2)) == -4);
  CHECK(ceil(make_rational(6, 3)) == 2);
}

TEST_CASE("pow of a rational") {
  CHECK(pow(make_rational(3, 2), 2) == make_rational(9, 4));
  CHECK(pow(make_rational(-2, 3), 3) == make_rational(-8, 27));
  CHECK(pow(make_rational(5, 7), 0) == 1);
}

TEST_CASE("exact and decimal rendering") {
  CHECK(to_string(make_rational(6, 4)) == "3/2");
  CHECK(to_string(make_rational(-4, 2)) == "-2");
  CHECK(to_decimal(make_rational(1, 3)) == "0.333333");
  CHECK(to_decimal(make_rational(2, 3), 2) == "0.67");
  CHECK(to_decimal(make_rational(-5, 2), 0) == "-3");
  CHECK(to_decimal(make_rational(-1, 1000000000)) == "0.000000");
  CHECK(to_decimal(make_rational(12)) == "12.000000");
}

TEST_CASE("parse_rational") {
  CHECK(parse_rational("3/6") == make_rational(1, 2));
  CHECK(parse_rational("-4") == -4);
  CHECK(parse_rational("+5/3") == make_rational(5, 3));
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a/2"), std::invalid_argument);
}

TEST_CASE("log_of handles values beyond double range") {
  Integer big = 1;
  big <<= 5000;
  CHECK(log_of(big) == doctest::Approx(5000 * std::log(2.0)));
  CHECK(log_of(make_rational(1, 8)) == doctest::Approx(-3 * std::log(2.0)));
  CHECK_THROWS(log_of(Integer(0)));
}
