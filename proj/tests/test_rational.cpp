#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "prio/rational.hpp"

using namespace prio;

TEST_CASE("fraction literals") {
  CHECK(parse_rational("37/4") == Rational(37, 4));
  CHECK(parse_rational("13/3") == Rational(13, 3));
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational("74/8") == Rational(37, 4));
}

TEST_CASE("integer and decimal literals") {
  CHECK(parse_rational("5") == Rational(5));
  CHECK(parse_rational("-12") == Rational(-12));
  CHECK(parse_rational("9.25") == Rational(37, 4));
  CHECK(parse_rational("0.5") == Rational(1, 2));
  CHECK(parse_rational("2.01") == Rational(201, 100));
}

TEST_CASE("rejected literals") {
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.2.3"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/"), ParseError);
  CHECK_THROWS_AS(parse_rational("1e3"), ParseError);
}

TEST_CASE("lowest-terms formatting") {
  CHECK(format_rational(Rational(74, 8)) == "37/4");
  CHECK(format_rational(Rational(5)) == "5");
  CHECK(format_rational(Rational(-6, 4)) == "-3/2");
  CHECK(format_rational(Rational(0)) == "0");
}

TEST_CASE("parse-format round trip is exact") {
  CHECK(format_rational(parse_rational("37/4")) == "37/4");
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<long long> num(-100000, 100000);
  std::uniform_int_distribution<long long> den(1, 100000);
  for (int trial = 0; trial < 500; ++trial) {
    Rational r(num(rng), den(rng));
    CHECK(parse_rational(format_rational(r)) == r);
  }
}

TEST_CASE("arithmetic stays exact at paper magnitudes") {
  Rational d = parse_rational("9.25");
  Rational sum = Rational(5) + Rational(9, 2) + d;
  CHECK(sum == Rational(75, 4));
  CHECK(sum * 2 != Rational(37));  // 37.5, not 37
  CHECK(numerator(sum) == 75);
  CHECK(denominator(sum) == 4);
}
