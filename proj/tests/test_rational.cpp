#include <doctest.h>

#include "isokit/error.hpp"
#include "isokit/rational.hpp"

using isokit::parse_rational;
using isokit::Rational;

TEST_CASE("fractions, integers and decimals parse exactly") {
  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational("17") == Rational(17));
  CHECK(parse_rational("-0.125") == Rational(-1, 8));
  CHECK(parse_rational("0.1") == Rational(1, 10));
  CHECK(parse_rational(" 3 ") == Rational(3));
  CHECK(parse_rational(".5") == Rational(1, 2));
}

TEST_CASE("malformed rationals are rejected") {
  CHECK_THROWS_AS(parse_rational("1/0"), isokit::ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), isokit::ParseError);
  CHECK_THROWS_AS(parse_rational("1/-2"), isokit::ParseError);
  CHECK_THROWS_AS(parse_rational(""), isokit::ParseError);
  CHECK_THROWS_AS(parse_rational("1.2.3"), isokit::ParseError);
}

TEST_CASE("printing is canonical") {
  CHECK(isokit::to_string(Rational(2, 4)) == "1/2");
  CHECK(isokit::to_string(Rational(4, 2)) == "2");
  CHECK(isokit::to_string(Rational(0)) == "0");
}
