#include <cmath>
#include <random>

#include "ballmap/chern_moser.hpp"
#include "ballmap/families.hpp"
#include "doctest.h"
#include "support/random_poly.hpp"

using namespace ballmap;
using namespace ballmap::testing;
using Q = GaussianRational;

namespace {

// Jet of F_p at the Heisenberg origin.
MapJet<Q> siegel_jet(const MapQ& ball_map, int order) {
  const MapQ f = conjugate_model(ball_map);
  return jet_at(f, BoundaryPoint<Q>::from_u(std::vector<Q>(f.nz(), Q(0)), Q(0)), order);
}

// z-only polynomial without constant term.
HoloQ random_germ(std::mt19937_64& rng, int nz, int max_deg, int nterms) {
  HoloQ p = random_holo(rng, nz, max_deg, nterms, false);
  p.add_term(Monomial{}, Q(0) - p.constant_term());
  return p;
}

}  // namespace

TEST_CASE("defining equation vanishes on proper catalog jets") {
  for (const MapQ& f : {whitney(3), dangelo(3), fhjz(3), example11(3)}) {
    const auto j = siegel_jet(f, 6);
    for (int d = 0; d <= 6; ++d) {
      INFO("n=" << f.n << " N=" << f.N << " d=" << d);
      CHECK(expand_defining(j, d).is_zero());
    }
  }
}

TEST_CASE("defining equation localizes an injected defect") {
  auto j = siegel_jet(whitney(3), 5);
  // A z_1^2 w term in f_1 enters first at weight 5 through 2 Re(z̄_1 f_1).
  j.comps[0].add_term(slot_monomial({0, 0, 2}), Q(1));
  for (int d = 0; d <= 4; ++d) CHECK(expand_defining(j, d).is_zero());
  const auto r = expand_defining(j, 5);
  REQUIRE_FALSE(r.is_zero());
  for (const auto& [key, part] : r.classes()) CHECK(key.upow <= 1);
  CHECK_THROWS_AS(expand_defining(j, 6), PreconditionError);
}

TEST_CASE("Lambda pairing identity on fixed and random inputs") {
  SUBCASE("rank one: both sides agree and the cross sum is empty") {
    const int n = 4, nz = 3;
    std::vector<HoloQ> g{HoloQ::z(nz, 1) + HoloQ::z(nz, 2, Q(2))};
    auto [lhs, rhs] = lemma31_combine(g, g, {Q(3)}, 1, n, 8);
    CHECK(lhs == rhs);
    const auto expect = HermQ::norm_sq(nz) * HermQ::conj_of(g[0]) * HermQ::from_holo(g[0]) * Q(4);
    CHECK(lhs == expect);  // P = μ_1 = 3 cancels the 1/μ_1
  }
  SUBCASE("rank two with Γ = (z1, z2), μ = (1, 2)") {
    const int nz = 4;
    std::vector<HoloQ> g{HoloQ::z(nz, 0), HoloQ::z(nz, 1)};
    auto [lhs, rhs] = lemma31_combine(g, g, {Q(1), Q(2)}, 2, 5, 15);
    CHECK(lhs == rhs);
  }
  SUBCASE("zero input") {
    std::vector<HoloQ> z{HoloQ(3), HoloQ(3)};
    auto [lhs, rhs] = lemma31_combine(z, z, {Q(1), Q(5)}, 2, 4, 10);
    CHECK(lhs.is_zero());
    CHECK(rhs.is_zero());
  }
  SUBCASE("nonpositive mu is rejected") {
    std::vector<HoloQ> g{HoloQ::z(3, 0)};
    CHECK_THROWS_AS(lemma31_combine(g, g, {Q(0)}, 1, 4, 8), PreconditionError);
    CHECK_THROWS_AS(lemma31_combine(g, g, {Q::i()}, 1, 4, 8), PreconditionError);
  }
  SUBCASE("100 random instances, compared against direct evaluation with radicals") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> kd(1, 2), nd(4, 8), md(1, 9);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 100; ++trial) {
      const int kappa = kd(rng), n = nd(rng), nz = n - 1;
      std::vector<Q> mu;
      std::vector<HoloQ> g1, g2;
      for (int j = 0; j < kappa; ++j) {
        mu.emplace_back(Rational(md(rng), md(rng)));
        g1.push_back(random_holo(rng, nz, 3, 4, false));
        g2.push_back(random_holo(rng, nz, 3, 4, false));
      }
      const int N = n + kappa * nz;
      auto [lhs, rhs] = lemma31_combine(g1, g2, mu, kappa, n, N);
      CHECK((lhs - rhs).is_zero());
      // Oracle: Λ from its definition with real square roots, at a random point.
      std::vector<Complex> z;
      for (int k = 0; k < nz; ++k) z.emplace_back(gauss(rng), gauss(rng));
      auto ev = [&](const HoloQ& p) { return convert<Complex>(p).evaluate(z); };
      double prod = 1;
      for (int j = 0; j < kappa; ++j) {
        prod *= mu[j].re().get_d();
        for (int l = j + 1; l < kappa; ++l) prod *= mu[j].re().get_d() + mu[l].re().get_d();
      }
      Complex direct(0, 0);
      const Complex two_i(0, 2);
      for (int j = 0; j < kappa; ++j)
        for (int l = j; l < nz; ++l) {
          const double mj = mu[j].re().get_d();
          double mjl = std::sqrt(mj);
          Complex x1, x2;
          if (j == l) {
            x1 = z[j] * ev(g1[j]);
            x2 = z[j] * ev(g2[j]);
          } else if (l < kappa) {
            mjl = std::sqrt(mj + mu[l].re().get_d());
            x1 = z[j] * ev(g1[l]) + z[l] * ev(g1[j]);
            x2 = z[j] * ev(g2[l]) + z[l] * ev(g2[j]);
          } else {
            x1 = z[l] * ev(g1[j]);
            x2 = z[l] * ev(g2[j]);
          }
          direct += std::conj(two_i * x1 / mjl) * (two_i * x2 / mjl);
        }
      const Complex got = convert<Complex>(lhs).evaluate(z) / prod;
      CHECK(std::abs(got - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("divisibility lemma checker") {
  const int n = 3, nz = 2;
  SUBCASE("S = 0 satisfies hypothesis and conclusion") {
    auto v = huang_lemma_check<Q>({HoloQ::z(nz, 0)}, {HoloQ(nz)}, n);
    CHECK(v.hypothesis_holds);
    CHECK(v.conclusion_holds);
    CHECK_FALSE(v.violation());
  }
  SUBCASE("z1 conj(z2) is not divisible") {
    auto v = huang_lemma_check<Q>({HoloQ::z(nz, 0)}, {HoloQ::z(nz, 1)}, n);
    CHECK_FALSE(v.hypothesis_holds);
    CHECK_FALSE(v.conclusion_holds);
  }
  SUBCASE("too many terms is a distinct error") {
    std::vector<HoloQ> a{HoloQ::z(nz, 0), HoloQ::z(nz, 1)};
    CHECK_THROWS_AS(huang_lemma_check<Q>(a, a, n), LemmaInapplicable);
    // n - 1 terms can realize |z|^2 itself, which is why the bound is n - 2.
  }
  SUBCASE("nonzero constant terms are rejected") {
    CHECK_THROWS_AS(huang_lemma_check<Q>({HoloQ::constant(nz, Q(1))}, {HoloQ::z(nz, 0)}, n), PreconditionError);
  }
  SUBCASE("1000 random instances never violate the lemma") {
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<int> nd(3, 6), coin(0, 3);
    int violations = 0, planted = 0, planted_ok = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const int nn = nd(rng), nzz = nn - 1;
      std::uniform_int_distribution<int> kd(1, nn - 2);
      const int k = kd(rng);
      std::vector<HoloQ> a, b;
      for (int i = 0; i < k; ++i) {
        a.push_back(random_germ(rng, nzz, 4, 3));
        b.push_back(random_germ(rng, nzz, 4, 3));
      }
      const bool plant = coin(rng) == 0;
      if (plant) {
        // S ≡ 0: zero out b, or pair a term with its negative.
        if (k >= 2 && coin(rng) % 2 == 0) {
          a[1] = a[0];
          b[1] = b[0] * Q(-1);
          for (int i = 2; i < k; ++i) b[i] = HoloQ(nzz);
        } else {
          for (auto& p : b) p = HoloQ(nzz);
        }
      }
      auto v = huang_lemma_check(a, b, nn);
      if (v.violation()) ++violations;
      if (plant) {
        ++planted;
        if (v.hypothesis_holds && v.conclusion_holds) ++planted_ok;
      }
    }
    CHECK(violations == 0);
    CHECK(planted > 100);
    CHECK(planted_ok == planted);
  }
}
