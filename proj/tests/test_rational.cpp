#include "heb/error.hpp"
#include "heb/rational.hpp"

#include <doctest.h>

#include <cmath>

using namespace heb;

TEST_CASE("parse_rational accepts integer, decimal and fraction forms") {
    CHECK(parse_rational("12") == 12);
    CHECK(parse_rational("-3") == -3);
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational("7/4") == Rational(7, 4));
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("to_string prints lowest terms") {
    CHECK(to_string(Rational(6, 4)) == "3/2");
    CHECK(to_string(Rational(-5)) == "-5");
    CHECK(to_string(Integer("123456789012345678901234567890")) == "123456789012345678901234567890");
}

TEST_CASE("rational_from_double is exact") {
    CHECK(rational_from_double(0.1) == Rational(Integer("3602879701896397"), Integer("36028797018963968")));
    CHECK(rational_from_double(-2.5) == Rational(-5, 2));
    CHECK(rational_from_double(0.0) == 0);
}

TEST_CASE("approximate returns continued-fraction convergents") {
    CHECK(approximate(M_PI, 10) == Rational(22, 7));
    CHECK(approximate(M_PI, 1000) == Rational(355, 113));
    CHECK(approximate(0.5, 100) == Rational(1, 2));
    CHECK(approximate(-0.75, 100) == Rational(-3, 4));
    CHECK(approximate(3.0, 5) == 3);
}

TEST_CASE("primitive_integer clears denominators and common factors") {
    auto v = primitive_integer({Rational(1, 2), Rational(-3, 4), Rational(0)});
    REQUIRE(v.size() == 3);
    CHECK(v[0] == 2);
    CHECK(v[1] == -3);
    CHECK(v[2] == 0);
    auto w = primitive_integer({Rational(4), Rational(6)});
    CHECK(w[0] == 2);
    CHECK(w[1] == 3);
}
