#include <doctest.h>

#include <random>

#include "flimit/dyadic.hpp"

using namespace flimit;

TEST_CASE("dyadic canonical form") {
  CHECK(Dyadic(Int(4), 2) == Dyadic(1));
  CHECK(Dyadic(Int(6), 1) == Dyadic(3));
  CHECK(Dyadic(Int(0), 7) == Dyadic(0));
  CHECK(Dyadic(Int(3), 2).num() == 3);
  CHECK(Dyadic(Int(3), 2).exp() == 2);
}

TEST_CASE("dyadic arithmetic and order") {
  Dyadic half(Int(1), 1), quarter(Int(1), 2);
  CHECK(half + quarter == Dyadic(Int(3), 2));
  CHECK(half - quarter == quarter);
  CHECK(half * half == quarter);
  CHECK(quarter < half);
  CHECK(half.times_pow2(-1) == quarter);
  CHECK(quarter.times_pow2(2) == Dyadic(1));
  CHECK(-half == Dyadic(Int(-1), 1));
}

TEST_CASE("dyadic strings round-trip") {
  CHECK(Dyadic(Int(3), 2).str() == "3/2^2");
  CHECK(Dyadic(5).str() == "5");
  CHECK(parse_dyadic("3/2^2") == Dyadic(Int(3), 2));
  CHECK(parse_dyadic("-7/2^3") == Dyadic(Int(-7), 3));
  CHECK(parse_dyadic("1/2") == Dyadic(Int(1), 1));
  CHECK(parse_dyadic("3/8") == Dyadic(Int(3), 3));
  CHECK(parse_dyadic("4") == Dyadic(4));
  CHECK_THROWS_AS(parse_dyadic("1/3"), Error);
  CHECK_THROWS_AS(parse_dyadic("x"), Error);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Dyadic d(Int(static_cast<long>(rng() % 4096) - 2048), rng() % 24);
    CHECK(parse_dyadic(d.str()) == d);
  }
}

TEST_CASE("rational arithmetic is canonical") {
  Rational a(Int(2), Int(4));
  CHECK(a.num() == 1);
  CHECK(a.den() == 2);
  Rational third(Int(1), Int(3));
  CHECK((a + third).str() == "5/6");
  CHECK((a * third).str() == "1/6");
  CHECK((a - a).str() == "0");
  CHECK(a.times_pow2(-1).str() == "1/4");
  CHECK(parse_rational("5/6") == a + third);
  CHECK(parse_rational("-2/6") == Rational(Int(-1), Int(3)));
  CHECK_THROWS_AS(Rational(Int(1), Int(0)), Error);
}

TEST_CASE("rational to dyadic conversion") {
  CHECK(to_dyadic(Rational(Int(3), Int(8))) == Dyadic(Int(3), 3));
  CHECK(to_dyadic(Rational(Int(1), Int(3))) == std::nullopt);
  CHECK(to_dyadic(Rational(Int(4), Int(1))) == Dyadic(4));
  Dyadic d(Int(-11), 5);
  CHECK(to_dyadic(d.to_rational()) == d);
}
