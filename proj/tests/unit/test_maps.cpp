#include "ballmap/families.hpp"
#include "ballmap/maps.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace ballmap;
using ballmap::testing::padded_linear;

namespace {

using Q = GaussianRational;
const Q I = Q::i();
Q q(long a, long b = 1) { return Q(Rational(a, b)); }

}  // namespace

TEST_CASE("Cayley transform values") {
  auto rho = cayley<Q>(3);
  auto v = rho.evaluate({q(0), q(0), I});
  CHECK(v == std::vector<Q>{q(0), q(0), q(0)});
  v = rho.evaluate({q(0), q(0), q(0)});
  CHECK(v == std::vector<Q>{q(0), q(0), q(1)});
  v = rho.evaluate({q(0), q(0), q(1) + I});
  CHECK(v.back() == Q(Rational(-1, 5), Rational(2, 5)));
}

TEST_CASE("Cayley pair composes to the identity") {
  for (int n : {2, 3, 5}) {
    CHECK(same_map(compose(cayley<Q>(n), cayley_inverse<Q>(n)), identity_map<Q>(Model::Ball, n)));
    CHECK(same_map(compose(cayley_inverse<Q>(n), cayley<Q>(n)), identity_map<Q>(Model::Siegel, n)));
  }
}

TEST_CASE("model conjugation") {
  auto id = conjugate_model(identity_map<Q>(Model::Ball, 3));
  CHECK(id.model == Model::Siegel);
  CHECK(same_map(id, identity_map<Q>(Model::Siegel, 3)));

  auto w = whitney(2);
  auto back = conjugate_model(conjugate_model(w));
  CHECK(back.model == Model::Ball);
  CHECK(same_map(back, w));

  auto lin = conjugate_model(padded_linear(3, 5));
  REQUIRE(lin.N == 5);
  CHECK(lin.num[4] == lin.den * HoloQ::w(2));
  CHECK(lin.num[2].is_zero());
  CHECK(lin.num[3].is_zero());
  CHECK(lin.num[0] == lin.den * HoloQ::z(2, 0));
}

TEST_CASE("properness in the ball model") {
  auto v = is_proper(whitney(3));
  CHECK(v.proper);
  CHECK(v.certificate->str() == "z3*~z3 + 1");
  CHECK(is_proper(example11(4)).proper);
  for (int n : {2, 3, 8}) CHECK(is_proper(whitney(n)).proper);
  CHECK(is_proper(dangelo(8)).proper);
  CHECK(is_proper(fhjz(4)).proper);
  CHECK(is_proper(example11(8)).proper);

  auto bad = whitney(3);
  bad.num[3] *= q(1001, 1000);
  auto r = is_proper(bad);
  CHECK_FALSE(r.proper);
  CHECK_FALSE(r.residual.is_zero());
  CHECK(r.witness_class.has_value());
}

TEST_CASE("properness in the Siegel model") {
  for (const auto& f : {whitney(3), dangelo(3), example11(4), fhjz(3)}) {
    auto s = conjugate_model(f);
    CHECK(is_proper(s).proper);
  }
  auto s = conjugate_model(whitney(3));
  s.num[0] *= q(1001, 1000);
  CHECK_FALSE(is_proper(s).proper);
}

TEST_CASE("Heisenberg translations") {
  BoundaryPoint<Q> p{{q(1, 2), q(0)}, I * q(1, 4)};
  REQUIRE(p.on_boundary());
  auto sigma = make_sigma_p0(p);
  CHECK(sigma.evaluate({q(0), q(0), q(0)}) == std::vector<Q>{q(1, 2), q(0), I * q(1, 4)});
  CHECK(is_proper(sigma).proper);
  CHECK(same_map(compose(sigma, make_sigma_inverse(p)), identity_map<Q>(Model::Siegel, 3)));
  CHECK(same_map(compose(identity_map<Q>(Model::Siegel, 3), sigma), sigma));

  auto f = conjugate_model(whitney(3));
  auto fp = translate_basepoint(f, p);
  CHECK(fp.evaluate({q(0), q(0), q(0)}) == std::vector<Q>(5, q(0)));
  CHECK(is_proper(fp).proper);

  auto origin = BoundaryPoint<Q>::from_u({q(0), q(0)}, q(0));
  auto f0 = conjugate_model(padded_linear(3, 5));
  CHECK(same_map(translate_basepoint(f0, origin), f0));

  for (const auto& pt : sample_boundary_points(2, 4, 99)) {
    auto g = translate_basepoint(f, pt);
    CHECK(g.evaluate({q(0), q(0), q(0)}) == std::vector<Q>(5, q(0)));
    CHECK(is_proper(g).proper);
  }
}

TEST_CASE("isotropy elements preserve the Heisenberg boundary") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 5; ++t) {
    auto u = random_exact_unitary(3, rng);
    CHECK(is_unitary(u));
    auto iso = make_isotropy<Q>(4, q(3, 2), q(-2, 7), {q(1, 2) + I, q(0), q(-1, 3) * I}, u);
    CHECK(is_proper(iso).proper);
    CHECK(iso.evaluate({q(0), q(0), q(0), q(0)}) == std::vector<Q>(4, q(0)));
  }
}

TEST_CASE("automorphism action preserves properness") {
  auto w = whitney(3);
  std::mt19937_64 rng(8);
  auto uw = compose(unitary_map(random_exact_unitary(5, rng)), w);
  CHECK(is_proper(uw).proper);
  for (std::uint64_t seed : {1u, 2u}) {
    auto a = random_ball_automorphism(3, seed);
    CHECK(is_proper(a).proper);
    CHECK(is_proper(compose(w, a)).proper);
    auto b = random_ball_automorphism(5, seed + 10);
    CHECK(is_proper(compose(b, w)).proper);
    CHECK(sample_denominator(convert_map<Complex>(a), 500, seed) > 1e-6);
  }
}

TEST_CASE("affine hull dimension") {
  CHECK(affine_hull_dim(linear_embedding(3, 5)) == 3);
  CHECK(affine_hull_dim(example11(8)) == 24);
  for (int n : {2, 3, 4}) CHECK(affine_hull_dim(whitney(n)) == 2 * n - 1);
  auto padded = zero_pad(whitney(3), 2);
  CHECK(affine_hull_dim(compose(random_ball_automorphism(7, 5), padded)) == 5);
}

TEST_CASE("Whitney lift") {
  auto lifted = whitney_lift(identity_map<Q>(Model::Ball, 3));
  CHECK(same_map(lifted, whitney(3)));
  for (const auto& h : {linear_embedding(3, 4), whitney(3), dangelo(3), fhjz(3)}) {
    auto phi = whitney_lift(h);
    CHECK(is_proper(phi).proper);
    CHECK(affine_hull_dim(phi) <= affine_hull_dim(h) + h.n);
  }
  auto w2 = whitney_lift(whitney(2));
  CHECK(w2.N == 4);
  CHECK(affine_hull_dim(w2) == 4);
  CHECK(w2.num.back().total_degree() == 3);
}

TEST_CASE("map file round trip") {
  for (const auto& f : {whitney(3), fhjz(3), example11(4)}) {
    auto text = write_map(f);
    auto g = read_map_exact(text);
    CHECK(write_map(g) == text);
    CHECK(same_map(f, g));
  }
  auto s = conjugate_model(dangelo(2));
  CHECK(write_map(read_map_exact(write_map(s))) == write_map(s));
  CHECK_THROWS_AS(read_map_exact("model=ball n=2\nz1\n"), ParseError);
  CHECK_THROWS_AS(read_map_exact("model=ball n=2 N=1\nz3\n"), ParseError);
  CHECK_THROWS_AS(read_map_exact("model=ball n=2 N=2\nz1\n"), DimensionError);
}

TEST_CASE("irrational parameters are refused in exact mode") {
  CHECK_THROWS_AS(dangelo(3, Rational(1, 2)), ExactUnsolvable);
}
