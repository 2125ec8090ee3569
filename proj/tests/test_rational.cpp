#include "subalign/rational.hpp"

#include "subalign/errors.hpp"

#include <doctest.h>

using namespace subalign;

TEST_CASE("rationals parse and print in reduced p/q form") {
    CHECK(rational_to_string(rational_from_string("2/4")) == "1/2");
    CHECK(rational_to_string(rational_from_string("-2/4")) == "-1/2");
    CHECK(rational_to_string(rational_from_string("7")) == "7");
    CHECK(rational_to_string(rational_from_string("21/10")) == "21/10");
    CHECK(rational_from_string("3/4") == make_rational(3, 4));
}

TEST_CASE("malformed rationals are rejected") {
    CHECK_THROWS_AS(rational_from_string(""), input_error);
    CHECK_THROWS_AS(rational_from_string("abc"), input_error);
    CHECK_THROWS_AS(rational_from_string("1/0"), input_error);
    CHECK_THROWS_AS(make_rational(1, 0), input_error);
}

TEST_CASE("make_rational reduces and fixes the sign") {
    CHECK(rational_to_string(make_rational(2, 4)) == "1/2");
    CHECK(rational_to_string(make_rational(3, -6)) == "-1/2");
    CHECK(make_rational(0, 5) == Rational(0));
}

TEST_CASE("floor and ceil are exact") {
    CHECK(rational_floor(make_rational(7, 2)) == 3);
    CHECK(rational_ceil(make_rational(7, 2)) == 4);
    CHECK(rational_floor(make_rational(-7, 2)) == -4);
    CHECK(rational_ceil(make_rational(-7, 2)) == -3);
    CHECK(rational_floor(make_rational(6, 2)) == 3);
    CHECK(rational_ceil(make_rational(6, 2)) == 3);
}

TEST_CASE("support_size counts nonzero entries") {
    CHECK(support_size({Rational(0), Rational(1), Rational(0), make_rational(1, 3)}) == 2);
    CHECK(support_size({}) == 0);
}
