#pragma once

#include <random>

#include "ballmap/poly.hpp"

namespace ballmap::testing {

inline GaussianRational random_gaussian(std::mt19937_64& rng, int span = 5) {
  std::uniform_int_distribution<long> num(-span, span);
  std::uniform_int_distribution<long> den(1, span);
  return {Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
}

inline HoloQ random_holo(std::mt19937_64& rng, int nz, int max_deg, int nterms, bool with_w = true) {
  std::uniform_int_distribution<int> var(0, with_w ? nz : nz - 1);
  std::uniform_int_distribution<int> deg(0, max_deg);
  HoloQ p(nz);
  for (int t = 0; t < nterms; ++t) {
    Monomial m;
    int d = deg(rng);
    for (int k = 0; k < d; ++k) ++m[var(rng)];
    p.add_term(m, random_gaussian(rng));
  }
  return p;
}

inline HermQ random_herm(std::mt19937_64& rng, int nz, int max_deg, int nterms) {
  std::uniform_int_distribution<int> var(0, 2 * nz);
  std::uniform_int_distribution<int> deg(0, max_deg);
  HermQ p(nz);
  for (int t = 0; t < nterms; ++t) {
    Monomial m;
    int d = deg(rng);
    for (int k = 0; k < d; ++k) ++m[var(rng)];
    p.add_term(m, random_gaussian(rng));
  }
  return p;
}

}  // namespace ballmap::testing
