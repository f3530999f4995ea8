#include <catch2/catch_amalgamated.hpp>

#include "kinalg/rational.hpp"

using kinalg::Rational;

TEST_CASE("rational normalization and arithmetic") {
  REQUIRE(Rational(2, 4) == Rational(1, 2));
  REQUIRE(Rational(3, -6) == Rational(-1, 2));
  REQUIRE(Rational(0, 7) == Rational(0));
  REQUIRE(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  REQUIRE(Rational(1, 2) - Rational(1, 2) == Rational(0));
  REQUIRE(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  REQUIRE(Rational(1, 2) / Rational(1, 4) == Rational(2));
  REQUIRE(-Rational(5, 3) == Rational(-5, 3));
  REQUIRE(Rational(1, 3) < Rational(1, 2));
  REQUIRE(Rational(-1, 2).sign() == -1);
  REQUIRE_THROWS_AS(Rational(1, 0), kinalg::Error);
  REQUIRE_THROWS_AS(Rational(1) / Rational(0), kinalg::Error);
}

TEST_CASE("rational powers") {
  REQUIRE(Rational::pow(Rational(2, 3), 3) == Rational(8, 27));
  REQUIRE(Rational::pow(Rational(2, 3), -2) == Rational(9, 4));
  REQUIRE(Rational::pow(Rational(7), 0) == Rational(1));
  REQUIRE(Rational::pow(Rational(0), 4) == Rational(0));
  REQUIRE_THROWS_AS(Rational::pow(Rational(0), -1), kinalg::Error);
}

TEST_CASE("exact square roots") {
  REQUIRE(Rational(9, 4).sqrt_exact() == Rational(3, 2));
  REQUIRE(Rational(1).sqrt_exact() == Rational(1));
  REQUIRE_FALSE(Rational(2).sqrt_exact().has_value());
  REQUIRE_FALSE(Rational(-4).sqrt_exact().has_value());
}

TEST_CASE("rational printing") {
  REQUIRE(Rational(3).str() == "3");
  REQUIRE(Rational(-1, 2).str() == "-1/2");
  REQUIRE(Rational(0).str() == "0");
}

TEST_CASE("overflow is detected, not wrapped") {
  Rational big(INT64_MAX / 2, 1);
  REQUIRE_THROWS_AS(big * big, kinalg::OverflowError);
}
