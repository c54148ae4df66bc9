#include <random>

#include "ballmap/families.hpp"
#include "ballmap/normalize.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/random_poly.hpp"

using namespace ballmap;
using ballmap::testing::padded_linear;

namespace {

using Q = GaussianRational;

// J * q == P through weight T is the defining property of the jet; it does
// not go through series_inverse.
template <class S>
void check_jet_identity(const RationalMap<S>& f, const MapJet<S>& j) {
  const auto g = f.canonical();
  for (int k = 0; k < f.N; ++k) CHECK(mul_truncated(j.comps[k], g.den, j.order) == g.num[k].truncated(j.order));
}

}  // namespace

TEST_CASE("series inverse of 1 - w is the geometric series") {
  const int nz = 2;
  HoloQ q = HoloQ::constant(nz, Q(1)) - HoloQ::w(nz);
  HoloQ expect(nz);
  for (int k = 0; 2 * k <= 7; ++k) {
    Monomial m;
    m[nz] = static_cast<std::uint8_t>(k);
    expect.add_term(m, Q(1));
  }
  CHECK(series_inverse(q, 7) == expect);
  CHECK(mul_truncated(series_inverse(q, 7), q, 7) == HoloQ::constant(nz, Q(1)));
}

TEST_CASE("jets of catalog maps satisfy J q = P") {
  auto f = conjugate_model(whitney(3));
  auto j = jet_of(f, 5);
  check_jet_identity(f, j);
  auto e = conjugate_model(example11(3));
  auto moved = translate_basepoint(e, BoundaryPoint<Q>::from_u({Q(0), Q(0)}, Q(0)));
  check_jet_identity(moved, jet_of(moved, 6));
}

TEST_CASE("truncated translation agrees with full translation") {
  for (const MapQ& ball : {whitney(3), fhjz(3), example11(3)}) {
    auto f = conjugate_model(ball);
    for (const auto& p : sample_boundary_points(f.nz(), 3, 11)) {
      auto full = translate_basepoint(f, p);
      auto a = jet_at(f, p, 4);
      auto b = jet_of(full, 4);
      for (int k = 0; k < f.N; ++k) CHECK(a.comps[k] == b.comps[k]);
      check_jet_identity(full, a);
    }
  }
}

TEST_CASE("fraction-free rank matches rational elimination") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int r = 2 + static_cast<int>(rng() % 5), c = 2 + static_cast<int>(rng() % 5);
    const int k = 1 + static_cast<int>(rng() % std::min(r, c));
    Matrix<Q> a(r, k), b(k, c);
    for (int x = 0; x < r; ++x)
      for (int y = 0; y < k; ++y) a(x, y) = testing::random_gaussian(rng, 40);
    for (int x = 0; x < k; ++x)
      for (int y = 0; y < c; ++y) b(x, y) = testing::random_gaussian(rng, 40);
    const Matrix<Q> m = a * b;
    CHECK(rank(m) == static_cast<int>(row_reduce(m).pivots.size()));
    CHECK(rank(m) <= k);
  }
}

TEST_CASE("geometric rank of catalog maps over 25 boundary points") {
  struct Case {
    MapQ f;
    int rank;
  };
  const std::vector<Case> cases{{padded_linear(8, 12), 0}, {whitney(8), 1}, {fhjz(4), 1}, {example11(8), 2}};
  for (const auto& c : cases) {
    auto s = conjugate_model(c.f);
    auto rep = geometric_rank(s, 25, 2024, Mode::Exact);
    CHECK(rep.rank == c.rank);
    CHECK(rep.constant);
    CHECK(rep.samples.size() == 25);
  }
}

TEST_CASE("exact and float rank agree") {
  for (const MapQ& ball : {whitney(5), dangelo(4), fhjz(4), example11(5), padded_linear(4, 6)}) {
    auto s = conjugate_model(ball);
    for (const auto& p : sample_boundary_points(s.nz(), 4, 3))
      CHECK(geometric_rank_at(s, p, Mode::Exact) == geometric_rank_at(s, p, Mode::Float));
  }
}

TEST_CASE("geometric rank is invariant under automorphisms") {
  const int n = 4;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const MapQ src = random_ball_automorphism(n, seed);
    const MapQ tgt = random_ball_automorphism(3 * n, seed + 100);
    auto s = conjugate_model(compose(tgt, compose(example11(n), src)));
    CHECK(geometric_rank(s, 4, seed, Mode::Exact).rank == 2);
    auto w = conjugate_model(compose(whitney(n), src));
    CHECK(geometric_rank(w, 4, seed, Mode::Exact).rank == 1);
  }
}

TEST_CASE("Lemma 2.1 form in float mode") {
  for (const MapQ& ball : {whitney(4), fhjz(4), example11(4), example11(8)}) {
    const MapF f = convert_map<Complex>(conjugate_model(ball));
    for (const auto& pq : sample_boundary_points(f.nz(), 3, 9)) {
      auto norm = normalize_lemma21(f, convert_point<Complex>(pq), 4);
      const auto& j = norm.jet;
      const int nz = j.nz();
      auto lp = linear_part(j);
      for (int r = 0; r < nz; ++r)
        for (int k = 0; k + 1 < j.N; ++k) CHECK(std::abs(lp.M(r, k) - Complex(r == k ? 1.0 : 0.0)) < 1e-9);
      for (const auto& b : lp.b) CHECK(std::abs(b) < 1e-9);
      CHECK(std::abs(lp.lambda - Complex(1.0)) < 1e-9);
      CHECK(std::abs(j.g().coeff(slot_monomial({nz, nz})).real()) < 1e-9);
      CHECK(norm.compat_residual.max_abs_coeff() < 1e-9);
      auto eig = hermitian_eigen(norm.A);
      for (double v : eig.values) CHECK(v > -1e-9);
    }
  }
}

TEST_CASE("Lemma 2.1 form in exact mode recovers a planted normal form") {
  // n = 3, N = 5: f = z + (i/2) diag(4, 0) z w, φ = (2 z1^2, 2 z1 z2), g = w
  // satisfies the compatibility identity 4|z1|^2 |z|^2 = |φ|^2.
  const int nz = 2;
  const Q I = Q::i();
  MapJet<Q> j0{3, 5, 4, {}};
  j0.comps.push_back(HoloQ::z(nz, 0) + HoloQ::z(nz, 0, Q(2) * I) * HoloQ::w(nz));
  j0.comps.push_back(HoloQ::z(nz, 1));
  j0.comps.push_back(HoloQ::z(nz, 0, Q(2)) * HoloQ::z(nz, 0));
  j0.comps.push_back(HoloQ::z(nz, 0, Q(2)) * HoloQ::z(nz, 1));
  j0.comps.push_back(HoloQ::w(nz));
  Matrix<Q> u(4, 4);
  u(0, 2) = I;
  u(1, 0) = Q(-1);
  u(2, 3) = Q(1);
  u(3, 1) = -I;
  const std::vector<Q> a{Q(Rational(1, 2)), I, Q(-1), Q(Rational(2, 3)) * I};
  auto tau = make_isotropy<Q>(5, Q(2), Q(Rational(1, 3)), a, u);
  auto norm = normalize_lemma21_jet(apply_target(tau, j0));
  CHECK(norm.lambda == Q(4));
  CHECK(norm.compat_residual.is_zero());
  CHECK(norm.A(0, 0) == Q(4));
  CHECK(norm.A(0, 1).is_zero());
  CHECK(norm.A(1, 0).is_zero());
  CHECK(norm.A(1, 1).is_zero());
  CHECK(norm.jet.g() == HoloQ::w(nz).truncated(4));
  CHECK(norm.jet.comps[1] == HoloQ::z(nz, 1));
  CHECK(norm.tau_chain.size() == 3);
}

TEST_CASE("Lemma 2.1 needs a weight-4 jet") {
  auto f = conjugate_model(whitney(3));
  auto p = BoundaryPoint<Q>::from_u({Q(0), Q(0)}, Q(0));
  CHECK_THROWS_AS(normalize_lemma21(f, p, 3), PreconditionError);
}
