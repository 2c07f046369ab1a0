#include "doctest.h"

#include "bbkit/exact.hpp"

using namespace bbkit;

TEST_CASE("exact: gaussian rational arithmetic") {
  ExactScalar a{Rational(1), Rational(2)};   // 1+2i
  ExactScalar b{Rational(3), Rational(-1)};  // 3-i
  CHECK(a * b == ExactScalar(Rational(5), Rational(5)));
  CHECK(a + b == ExactScalar(Rational(4), Rational(1)));
  CHECK(a - a == ExactScalar(0));
  CHECK(-a == ExactScalar(Rational(-1), Rational(-2)));
  CHECK(a.conj() == ExactScalar(Rational(1), Rational(-2)));
  CHECK(ExactScalar(Rational(3), Rational(4)).abs2() == Rational(25));
}

TEST_CASE("exact: inverse and division") {
  ExactScalar one_plus_i{Rational(1), Rational(1)};
  CHECK(one_plus_i.inv() == ExactScalar(Rational(1, 2), Rational(-1, 2)));
  CHECK(one_plus_i * one_plus_i.inv() == ExactScalar(1));
  ExactScalar q{Rational(7, 3), Rational(-2, 5)};
  CHECK(q / q == ExactScalar(1));
  CHECK_THROWS_AS(ExactScalar(0).inv(), DomainError);
}

TEST_CASE("exact: integer powers by repeated squaring") {
  CHECK(pow(ExactScalar(2), 10) == ExactScalar(1024));
  CHECK(pow(ExactScalar(Rational(1, 2)), -3) == ExactScalar(8));
  ExactScalar i{Rational(0), Rational(1)};
  CHECK(pow(i, 2) == ExactScalar(-1));
  CHECK(pow(i, 3) == -i);
  CHECK(pow(i, 4) == ExactScalar(1));
  CHECK(pow(i, -1) == -i);
  CHECK(pow(ExactScalar(0), 3) == ExactScalar(0));
  CHECK(pow(ExactScalar(5), 0) == ExactScalar(1));
  CHECK_THROWS_AS(pow(ExactScalar(0), 0), DomainError);
  CHECK_THROWS_AS(pow(ExactScalar(0), -2), DomainError);
}

TEST_CASE("exact: canonical text forms") {
  CHECK(to_string(ExactScalar(0)) == "0");
  CHECK(to_string(ExactScalar(Rational(3, 2))) == "3/2");
  CHECK(to_string(ExactScalar(Rational(0), Rational(1))) == "i");
  CHECK(to_string(ExactScalar(Rational(0), Rational(-1))) == "-i");
  CHECK(to_string(ExactScalar(Rational(0), Rational(3, 2))) == "3/2i");
  CHECK(to_string(ExactScalar(Rational(3, 2), Rational(1, 4))) == "3/2+1/4i");
  CHECK(to_string(ExactScalar(Rational(1), Rational(-1))) == "1-i");
  CHECK(to_string(ExactScalar(Rational(-1), Rational(-1))) == "-1-i");
  CHECK(to_string(ExactScalar(Rational(2), Rational(1))) == "2+i");
  CHECK(to_string(ExactScalar(Rational(0), Rational(-5, 7))) == "-5/7i");
}
