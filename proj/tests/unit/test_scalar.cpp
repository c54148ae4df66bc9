#include <random>

#include "ballmap/errors.hpp"
#include "ballmap/scalar.hpp"
#include "doctest.h"
#include "support/random_poly.hpp"

using namespace ballmap;

TEST_CASE("gaussian rationals are canonical") {
  GaussianRational a(Rational(2, 4), Rational(-3, 9));
  CHECK(a.re() == Rational(1, 2));
  CHECK(a.im() == Rational(-1, 3));
  CHECK(a == GaussianRational(Rational(1, 2), Rational(-1, 3)));
  CHECK((a - a).is_zero());
}

TEST_CASE("conjugation and modulus") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    auto s = testing::random_gaussian(rng);
    CHECK(s.conj().conj() == s);
    auto m = s * s.conj();
    CHECK(m.is_real());
    CHECK(m.re() == s.norm_sq());
  }
}

TEST_CASE("field operations") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    auto a = testing::random_gaussian(rng);
    auto b = testing::random_gaussian(rng);
    auto c = testing::random_gaussian(rng);
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a * b) * c == a * (b * c));
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
  CHECK_THROWS_AS(GaussianRational(1) / GaussianRational(0), Error);
}

TEST_CASE("scalar text round trip") {
  CHECK(parse_gaussian("3/4") == GaussianRational(Rational(3, 4)));
  CHECK(parse_gaussian("i") == GaussianRational::i());
  CHECK(parse_gaussian("(1/2-2/3*i)") == GaussianRational(Rational(1, 2), Rational(-2, 3)));
  CHECK(parse_gaussian("-5*i") == GaussianRational(Rational(0), Rational(-5)));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    auto s = testing::random_gaussian(rng);
    CHECK(parse_gaussian(s.str()) == s);
  }
  CHECK_THROWS_AS(parse_gaussian("1/0"), ParseError);
  CHECK_THROWS_AS(parse_gaussian("1/2x"), ParseError);
}

TEST_CASE("rational square roots") {
  CHECK(rational_sqrt(Rational(9, 25)).value() == Rational(3, 5));
  CHECK_FALSE(rational_sqrt(Rational(2)).has_value());
  CHECK_FALSE(rational_sqrt(Rational(-1)).has_value());
  CHECK(Field<GaussianRational>::sqrt_real(GaussianRational(Rational(16, 25))).value() ==
        GaussianRational(Rational(4, 5)));
}

TEST_CASE("float scalars print round-trippable text") {
  Complex x(0.1, -1.0 / 3.0);
  std::string s = Field<Complex>::str(x);
  CHECK(s == "0.10000000000000001-0.33333333333333331*i");
}
