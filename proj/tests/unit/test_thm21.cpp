#include "ballmap/families.hpp"
#include "support/fixtures.hpp"
#include "ballmap/thm21.hpp"
#include "doctest.h"

using namespace ballmap;
using ballmap::testing::planted_rank_two;

TEST_CASE("example11 reaches the rank-two normal form in float mode") {
  const MapF f = convert_map<Complex>(conjugate_model(example11(5)));
  for (const auto& pq : sample_boundary_points(4, 3, 17)) {
    auto t = normalize_thm21(f, convert_point<Complex>(pq), 6);
    CHECK(t.kappa == 2);
    auto chk = verify_thm21_form(t, 6);
    for (const auto& c : chk.clauses) INFO(c.clause << " " << c.max_abs << " " << c.offending.str());
    CHECK(chk.ok);
    CHECK(chk.max_residual < 1e-9);
    CHECK(t.compat_residual.max_abs_coeff() < 1e-9);
    CHECK_FALSE(t.cor34_applied);  // N = 3n lies outside the Φ1 rotation range for n = 5
  }
}

TEST_CASE("example11(8) normal form with the Phi1 rotation") {
  const MapF f = convert_map<Complex>(conjugate_model(example11(8)));
  for (const auto& pq : sample_boundary_points(7, 5, 2024)) {
    auto t = normalize_thm21(f, convert_point<Complex>(pq), 5);
    CHECK(t.kappa == 2);
    CHECK(t.cor34_applied);
    auto chk = verify_thm21_form(t, 5);
    for (const auto& c : chk.clauses) INFO(c.clause << " " << c.max_abs << " " << c.offending.str());
    CHECK(chk.ok);
    CHECK(t.cor34_residual < 1e-9);
    CHECK_FALSE(t.phi1_30_vanishes);
  }
}

namespace {

using Q = GaussianRational;

}  // namespace

TEST_CASE("planted normal form passes every clause") {
  Thm21Normalization<Q> t;
  t.jet = planted_rank_two();
  t.kappa = 2;
  t.mu = {Q(9), Q(16)};
  t.S0 = index_set_S0(2, 3);
  auto chk = verify_thm21_form(t, 5);
  CHECK(chk.ok);
  CHECK(chk.clauses.size() == 3 + 5 + 2 + 1);
}

TEST_CASE("clause checks localize injected defects") {
  Thm21Normalization<Q> t;
  t.jet = planted_rank_two();
  t.kappa = 2;
  t.mu = {Q(9), Q(16)};
  t.S0 = index_set_S0(2, 3);
  const int nz = 3;
  // z3^2 w in f_1 is outside the ideal (z1, z2).
  t.jet.comps[0] += HoloQ::z(nz, 2) * HoloQ::z(nz, 2) * HoloQ::w(nz);
  // 6 instead of 5 in front of z1 z2.
  t.jet.comps[4] += HoloQ::z(nz, 0) * HoloQ::z(nz, 1);
  auto chk = verify_thm21_form(t, 5);
  CHECK_FALSE(chk.ok);
  for (const auto& c : chk.clauses) {
    const bool expect_bad = c.clause == "f_1" || c.clause == "phi_12";
    CHECK_MESSAGE(c.offending.is_zero() != expect_bad, c.clause);
  }
}

TEST_CASE("exact normalization undoes rational automorphisms") {
  const int nz = 3;
  const Q I = Q::i();
  MapJet<Q> j = planted_rank_two();
  // Target isotropy with λ = 2 and a monomial unitary; source isotropy with a
  // coordinate swap of z1, z2 and a translation along w only.
  Matrix<Q> ut(10, 10);
  const int perm[10] = {0, 1, 2, 4, 3, 5, 6, 7, 9, 8};
  for (int k = 0; k < 10; ++k) ut(k, perm[k]) = (k % 3 == 1) ? I : Q(1);
  std::vector<Q> at(10, Q(0));
  at[3] = Q(Rational(1, 3));
  at[9] = -I;
  j = apply_target(make_isotropy<Q>(11, Q(2), Q(Rational(1, 5)), at, ut), j);
  Matrix<Q> us(nz, nz);
  us(0, 1) = Q(1);
  us(1, 0) = -I;
  us(2, 2) = Q(1);
  j = apply_source(j, make_isotropy<Q>(4, Q(1), Q(Rational(-1, 2)), std::vector<Q>(nz, Q(0)), us));
  auto t = normalize_thm21_jet(j);
  CHECK(t.kappa == 2);
  CHECK(t.mu == std::vector<Q>{Q(16), Q(9)});
  CHECK(t.compat_residual.is_zero());
  auto chk = verify_thm21_form(t, 5);
  for (const auto& c : chk.clauses) INFO(c.clause << ": " << c.offending.str());
  CHECK(chk.ok);
}
