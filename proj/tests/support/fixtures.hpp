#pragma once

#include <utility>

#include "ballmap/families.hpp"
#include "ballmap/jet.hpp"

namespace ballmap::testing {

// (z_1..z_{n-1}, 0, .., 0, z_n): the linear embedding with padding in the φ slots.
inline MapQ padded_linear(int n, int N) {
  MapQ f = linear_embedding(n, N);
  std::swap(f.num[n - 1], f.num[N - 1]);
  return f;
}

// Rank-two normal form for n = 4, N = 11 with μ = (9, 16): f = z + (i/2) μ z w,
// Φ0 = (3 z1^2, 5 z1 z2, 3 z1 z3, 4 z2^2, 4 z2 z3), Φ1 = 0, g = w.
inline MapJet<GaussianRational> planted_rank_two() {
  const int nz = 3;
  const GaussianRational I = GaussianRational::i();
  auto z = [&](int j) { return HoloQ::z(nz, j); };
  MapJet<GaussianRational> j{4, 11, 5, {}};
  j.comps.push_back(z(0) + z(0) * HoloQ::w(nz, GaussianRational(Rational(9, 2)) * I));
  j.comps.push_back(z(1) + z(1) * HoloQ::w(nz, GaussianRational(8) * I));
  j.comps.push_back(z(2));
  j.comps.push_back(z(0) * z(0) * GaussianRational(3));
  j.comps.push_back(z(0) * z(1) * GaussianRational(5));
  j.comps.push_back(z(0) * z(2) * GaussianRational(3));
  j.comps.push_back(z(1) * z(1) * GaussianRational(4));
  j.comps.push_back(z(1) * z(2) * GaussianRational(4));
  j.comps.emplace_back(nz);
  j.comps.emplace_back(nz);
  j.comps.push_back(HoloQ::w(nz));
  return j;
}

}  // namespace ballmap::testing
