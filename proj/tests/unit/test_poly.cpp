#include <random>

#include "ballmap/divide.hpp"
#include "ballmap/poly.hpp"
#include "doctest.h"
#include "support/random_poly.hpp"

using namespace ballmap;

namespace {

GaussianRational q(long a, long b = 1) { return GaussianRational(Rational(a, b)); }
const GaussianRational I = GaussianRational::i();

}  // namespace

TEST_CASE("basic arithmetic") {
  auto z1 = HoloQ::z(2, 0);
  CHECK((z1 * z1).str() == "z1^2");
  CHECK(conj(HoloQ::z(2, 0, I)).str() == "-i*~z1");
  auto p = HoloQ::parse("2*z1 + w", 1);
  CHECK(p.evaluate({q(1, 2)}, I) == q(1) + I);
  CHECK_THROWS_AS(HoloQ::z(2, 0) + HoloQ::z(3, 0), DimensionError);
}

TEST_CASE("grammar round trip") {
  auto p = HoloQ::parse("1/2*z1^2*w - i*z2", 2);
  CHECK(p.str() == "1/2*z1^2*w - i*z2");
  CHECK(HoloQ::parse(p.str(), 2) == p);
  auto c = HoloQ::parse("(1/2+3/4*i)*z1 - (2-i)", 1);
  CHECK(c.str() == "(1/2+3/4*i)*z1 + (-2+i)");
  CHECK(HoloQ::parse(c.str(), 1) == c);
  auto h = HermQ::parse("z1*~z2*u - 3*~z1^2 + 1", 2);
  CHECK(HermQ::parse(h.str(), 2) == h);
  CHECK(HoloQ::parse("0", 3).is_zero());
  CHECK_THROWS_AS(HoloQ::parse("z3", 2), ParseError);
  CHECK_THROWS_AS(HoloQ::parse("0.5*z1", 2), ParseError);
  CHECK_THROWS_AS(HoloQ::parse("z1 +", 2), ParseError);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    auto r = testing::random_holo(rng, 3, 4, 6);
    CHECK(HoloQ::parse(r.str(), 3) == r);
    auto s = testing::random_herm(rng, 3, 4, 6);
    CHECK(HermQ::parse(s.str(), 3) == s);
  }
}

TEST_CASE("float grammar round trip is bit exact") {
  HoloF p(2);
  Monomial m;
  m[0] = 1;
  p.add_term(m, Complex(0.1, 1.0 / 7.0));
  m[2] = 2;
  p.add_term(m, Complex(-1e-5, 0));
  auto back = HoloF::parse(p.str(), 2);
  CHECK(back == p);
  CHECK(back.str() == p.str());
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 30; ++t) {
    auto a = testing::random_holo(rng, 2, 3, 4);
    auto b = testing::random_holo(rng, 2, 3, 4);
    auto c = testing::random_holo(rng, 2, 3, 4);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    auto x = testing::random_herm(rng, 2, 3, 4);
    auto y = testing::random_herm(rng, 2, 3, 4);
    auto z = testing::random_herm(rng, 2, 3, 4);
    CHECK((x * y) * z == x * (y * z));
    CHECK((x + y) * z == x * z + y * z);
    CHECK((x * y).conj() == x.conj() * y.conj());
  }
}

TEST_CASE("boundary restriction") {
  CHECK(restrict_to_boundary(HoloQ::w(2)).str() == "i*z1*~z1 + i*z2*~z2 + u");
  // (u + i|z|^2)^2 expanded by hand for one variable.
  auto w2 = restrict_to_boundary(HoloQ::parse("w^2", 1));
  CHECK(w2 == HermQ::parse("u^2 + 2*i*u*z1*~z1 - z1^2*~z1^2", 1));
  CHECK(restrict_to_boundary(HoloQ::z(2, 0)) == HermQ::z(2, 0));

  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    auto a = testing::random_holo(rng, 2, 3, 4);
    auto b = testing::random_holo(rng, 2, 3, 4);
    CHECK(restrict_to_boundary(a * b) == restrict_to_boundary(a) * restrict_to_boundary(b));
    CHECK(restrict_to_boundary(a).weighted_degree() == a.weighted_degree());
  }
}

TEST_CASE("weighted decomposition") {
  auto d = weighted_decompose(HoloQ::parse("z1^2*w", 2));
  REQUIRE(d.size() == 1);
  CHECK(d.at(4).front().k == 2);
  CHECK(d.at(4).front().l == 1);
  auto e = weighted_decompose(HoloQ::parse("z1 + z2*w^2", 2));
  CHECK(e.at(1).front().k == 1);
  CHECK(e.at(5).front().l == 2);
  CHECK(e.at(5).front().poly == HoloQ::z(2, 1));

  std::mt19937_64 rng(29);
  for (int t = 0; t < 20; ++t) {
    auto h = testing::random_holo(rng, 3, 4, 8);
    HoloQ sum(3);
    for (const auto& [wt, blocks] : weighted_decompose(h))
      for (const auto& b : blocks) {
        CHECK(b.k + 2 * b.l == wt);
        Monomial m;
        m[3] = static_cast<std::uint8_t>(b.l);
        HoloQ wl(3);
        wl.add_term(m, q(1));
        sum += b.poly * wl;
      }
    CHECK(sum == h);
  }
}

TEST_CASE("coefficient classes partition") {
  auto h = HermQ::parse("z1*~z2*u + z1^2", 2);
  CHECK(h.extract_class(1, 1, 1) == HermQ::parse("z1*~z2*u", 2));
  auto w = restrict_to_boundary(HoloQ::w(2));
  auto ww = w * w.conj();
  CHECK(ww.extract_class(2, 2, 0) == HermPoly<GaussianRational>::norm_sq(2) * HermQ::norm_sq(2));
  CHECK(ww.extract_class(1, 1, 0).is_zero());

  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    auto x = testing::random_herm(rng, 3, 4, 10);
    HermQ sum(3);
    for (const auto& [k, part] : x.classes()) {
      CHECK(part == x.extract_class(k.adeg, k.bdeg, k.upow));
      sum += part;
    }
    CHECK(sum == x);
  }
}

TEST_CASE("real-valued flag is closed under sums and products") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 20; ++t) {
    auto a = testing::random_herm(rng, 2, 3, 5);
    auto b = testing::random_herm(rng, 2, 3, 5);
    auto ra = a + a.conj();
    auto rb = b + b.conj();
    CHECK(ra.is_real_valued());
    CHECK((ra + rb).is_real_valued());
    CHECK((ra * rb).is_real_valued());
  }
}

TEST_CASE("division by |z|^2") {
  auto n2 = HermQ::norm_sq(3);
  CHECK(divide_by_norm_sq(n2 * n2).value() == n2);
  CHECK_FALSE(divide_by_norm_sq(HermQ::parse("z1*~z2", 3)).has_value());
  CHECK(divide_by_norm_sq(HermQ(3)).value().is_zero());

  std::mt19937_64 rng(41);
  for (int t = 0; t < 30; ++t) {
    auto a = testing::random_herm(rng, 3, 3, 6);
    auto h = a * n2;
    auto got = divide_by_norm_sq(h);
    REQUIRE(got.has_value());
    CHECK((*got * n2 - h).is_zero());
    auto real = a + a.conj();
    CHECK(divide_by_norm_sq(real * n2).value().is_real_valued());
    auto off = h + HermQ::parse("z1*~z2", 3);
    CHECK_FALSE(divide_by_norm_sq(off).has_value());
  }
}

TEST_CASE("division by the sphere") {
  // Whitney n = 3: |z1|^2 + |z2|^2 + |z3|^2 |z|^2 - 1 = (|z|^2 - 1)(1 + |z3|^2).
  auto w = HermQ::parse("z1*~z1 + z2*~z2 + z3*~z3*(z1*~z1 + z2*~z2 + z3*~z3) - 1", 3);
  CHECK(divide_by_sphere(w).value() == HermQ::parse("1 + z3*~z3", 3));
  auto f = HermQ::parse("z1*~z1 + z2*~z2 + 9/25*z3*~z3 + 16/25*z3*~z3*(z1*~z1 + z2*~z2 + z3*~z3) - 1", 3);
  CHECK(divide_by_sphere(f).value() == HermQ::parse("1 + 16/25*z3*~z3", 3));
  CHECK_FALSE(divide_by_sphere(HermQ::parse("z1*~z1 - 1", 2)).has_value());
}
