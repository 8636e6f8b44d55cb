#include <doctest.h>

#include "ri/rational.hpp"

using ri::Rational;

TEST_CASE("rational normalization and arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(-Rational(1, 3) == Rational(-1, 3));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
}

TEST_CASE("rational parsing and printing") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-3/4") == Rational(-3, 4));
    CHECK(Rational::parse("12") == Rational(12));
    CHECK(Rational::parse("0.25") == Rational(1, 4));
    CHECK(Rational::parse(" 5/10 ") == Rational(1, 2));
    CHECK(Rational(9, 4).str() == "9/4");
    CHECK(Rational(-8, 2).str() == "-4");
    CHECK(Rational(0).str() == "0");
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/2/3"), std::invalid_argument);
}

TEST_CASE("division by zero and overflow are reported") {
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::domain_error);
    const Rational huge(ri::int128(1) << 126, 1);
    CHECK_THROWS_AS(huge * huge, std::overflow_error);
    CHECK_THROWS_AS(huge + huge, std::overflow_error);
}

TEST_CASE("factorials and binomials") {
    CHECK(ri::rational_factorial(0) == Rational(1));
    CHECK(ri::rational_factorial(5) == Rational(120));
    CHECK(ri::rational_binomial(4, 2) == Rational(6));
    CHECK(ri::rational_binomial(24, 12) == Rational(2704156));
    CHECK(ri::rational_binomial(3, 5) == Rational(0));
}

TEST_CASE("ordering weight is the exact factorial ratio") {
    CHECK(ri::beta_exact(2, 4) == Rational(1, 12));
    CHECK(ri::beta_exact(1, 4) == Rational(1, 4));
    CHECK(ri::beta_exact(4, 4) == Rational(1, 4));
    CHECK(ri::beta_exact(3, 4) == Rational(1, 12));
    CHECK(ri::beta_exact(1, 1) == Rational(1));
    CHECK(ri::beta_exact(12, 24) ==
          ri::rational_factorial(11) * ri::rational_factorial(12) /
              ri::rational_factorial(24));
    CHECK_THROWS_AS(ri::beta_exact(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(ri::beta_exact(5, 4), std::invalid_argument);
    CHECK_THROWS_AS(ri::beta_exact(1, 25), std::invalid_argument);
}

TEST_CASE("double conversion") {
    CHECK(Rational(1, 2).to_double() == 0.5);
    CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}
