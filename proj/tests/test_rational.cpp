#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <unordered_set>

#include "mldlab/rational.hpp"

using namespace mldlab;

TEST_CASE("rat_floor on the documented values") {
  CHECK(rat_floor(Rational(36, 19)) == 1);
  CHECK(rat_floor(Rational(-1, 2)) == -1);
  CHECK(rat_floor(Rational(3)) == 3);
}

TEST_CASE("frac_part on the documented values") {
  CHECK(frac_part(Rational(90, 19)) == Rational(14, 19));
  CHECK(frac_part(Rational(7, 1)) == Rational(0));
  CHECK(frac_part(Rational(12, 13)) == Rational(12, 13));
}

TEST_CASE("in_gamma") {
  CHECK(in_gamma(3, 16));
  CHECK_FALSE(in_gamma(3, 27));
  CHECK(in_gamma(19, 18));
  CHECK_THROWS_AS(in_gamma(1, 5), std::invalid_argument);
  CHECK_THROWS_AS(in_gamma(3, 0), std::invalid_argument);
}

TEST_CASE("floor/frac sandwich on random values") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> dnum(-5000, 5000), dden(1, 1000);
  for (int i = 0; i < 2000; ++i) {
    Rational x(dnum(rng), dden(rng));
    Rational f(rat_floor(x));
    CHECK(f <= x);
    CHECK(x < f + Rational(1));
    Rational fp = frac_part(x);
    CHECK(fp >= Rational(0));
    CHECK(fp < Rational(1));
    CHECK(f + fp == x);
  }
}

TEST_CASE("floor(a) + ceil(b) = a + b when the sum is an integer") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> dnum(-3000, 3000), dden(1, 1000), dint(-5, 5);
  for (int i = 0; i < 2000; ++i) {
    Rational a(dnum(rng), dden(rng));
    Rational b = Rational(dint(rng)) - a;  // a + b integral by construction
    Rational sum = a + b;
    REQUIRE(sum.is_integer());
    CHECK(Rational(rat_floor(a)) + Rational(rat_ceil(b)) == sum);
  }
}

TEST_CASE("arithmetic keeps values reduced with positive denominators") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<long> dnum(-300, 300), dden(1, 120), dop(0, 3);
  Rational x(1, 2);
  for (int i = 0; i < 5000; ++i) {
    Rational y(dnum(rng), dden(rng));
    switch (dop(rng)) {
      case 0: x = x + y; break;
      case 1: x = x - y; break;
      case 2: x = x * y; break;
      case 3:
        if (y != Rational(0)) x = x / y;
        break;
    }
    CHECK(x.den() > 0);
    CHECK(gcd(abs(x.num()), x.den()) == 1);
    if (abs(x.num()) > mpz_class("1000000000000000000000000")) x = Rational(1, 3);
  }
}

TEST_CASE("equality, ordering and hashing agree with the represented value") {
  Rational a(2, 4), b(1, 2), c(-3, -6);  // all one half
  CHECK(a == b);
  CHECK(b == c);
  std::hash<Rational> h;
  CHECK(h(a) == h(b));
  CHECK(h(b) == h(c));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));

  std::unordered_set<Rational> set;
  set.insert(Rational(10, 20));
  CHECK(set.count(Rational(1, 2)) == 1);
}

TEST_CASE("canonical text form") {
  CHECK(Rational(36, 19).str() == "36/19");
  CHECK(Rational(-4, 8).str() == "-1/2");
  CHECK(Rational(12, 4).str() == "3");
  CHECK(Rational(0, 5).str() == "0");
  CHECK(Rational::parse("36/19") == Rational(36, 19));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational::parse("4/6") == Rational(2, 3));
}

TEST_CASE("parse rejects malformed text") {
  CHECK_THROWS_AS(Rational::parse(""), ParseError);
  CHECK_THROWS_AS(Rational::parse("1.5"), ParseError);
  CHECK_THROWS_AS(Rational::parse("a/b"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/-2"), ParseError);
  CHECK_THROWS_AS(Rational::parse("/3"), ParseError);
  CHECK_THROWS_AS(Rational::parse("3/"), ParseError);
}

TEST_CASE("construction and division guard against zero denominators") {
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational(3, 4) / Rational(0), std::domain_error);
}
