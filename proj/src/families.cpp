#include "ballmap/families.hpp"

namespace ballmap {

namespace {

using Q = GaussianRational;

HoloQ zz(int n, int j) { return HoloQ::z(n, j); }

MapQ ball_map(int n, std::vector<HoloQ> comps, HoloQ den) {
  MapQ f;
  f.model = Model::Ball;
  f.n = n;
  f.N = static_cast<int>(comps.size());
  f.num = std::move(comps);
  f.den = std::move(den);
  f.validate();
  return f;
}

void require_dim(int n, int lo) {
  if (n < lo) throw DimensionError("family needs n >= " + std::to_string(lo));
}

}  // namespace

Rational rational_complement(const Rational& x) {
  if (sgn(x) < 0 || x >= 1) throw PreconditionError("parameter must lie in [0, 1)");
  auto s = rational_sqrt(1 - x * x);
  if (!s) throw ExactUnsolvable("sqrt(1 - " + x.get_str() + "^2) is irrational");
  return *s;
}

MapQ whitney(int n) {
  require_dim(n, 2);
  std::vector<HoloQ> c;
  for (int j = 0; j + 1 < n; ++j) c.push_back(zz(n, j));
  for (int j = 0; j < n; ++j) c.push_back(zz(n, n - 1) * zz(n, j));
  return ball_map(n, std::move(c), HoloQ::constant(n, Q(1)));
}

MapQ dangelo(int n, const Rational& c) {
  require_dim(n, 2);
  const Q s(rational_complement(c));
  std::vector<HoloQ> comps;
  for (int j = 0; j + 1 < n; ++j) comps.push_back(zz(n, j));
  comps.push_back(zz(n, n - 1) * Q(c));
  for (int j = 0; j < n; ++j) comps.push_back(zz(n, n - 1) * zz(n, j) * s);
  return ball_map(n, std::move(comps), HoloQ::constant(n, Q(1)));
}

MapQ example11(int n, const Rational& lambda, const Rational& mu) {
  require_dim(n, 2);
  const Q sl(rational_complement(lambda));
  const Q sm(rational_complement(mu));
  const HoloQ zl = zz(n, n - 2);
  const HoloQ zn = zz(n, n - 1);
  std::vector<HoloQ> c;
  for (int j = 0; j + 2 < n; ++j) c.push_back(zz(n, j));
  c.push_back(zl * Q(lambda));
  c.push_back(zn);
  for (int j = 0; j + 1 < n; ++j) c.push_back(zl * zz(n, j) * sl);
  c.push_back(zl * zn * (sl * Q(mu)));
  for (int j = 0; j < n; ++j) c.push_back(zl * zn * zz(n, j) * (sl * sm));
  return ball_map(n, std::move(c), HoloQ::constant(n, Q(1)));
}

MapQ fhjz(int n, const Rational& a) {
  require_dim(n, 2);
  const Q s(rational_complement(a));
  const HoloQ zn = zz(n, n - 1);
  const HoloQ one = HoloQ::constant(n, Q(1));
  const HoloQ den = one - zn * Q(a);
  const HoloQ zn2 = zn * zn;
  std::vector<HoloQ> c;
  for (int j = 0; j + 1 < n; ++j) c.push_back(zz(n, j) * den);
  for (int j = 0; j + 1 < n; ++j) c.push_back(zn * zz(n, j) * den);
  for (int j = 0; j + 1 < n; ++j) c.push_back(zn2 * zz(n, j) * s);
  c.push_back(zn2 * (zn - one * Q(a)));
  return ball_map(n, std::move(c), den);
}

MapQ linear_embedding(int n, int N) {
  require_dim(n, 1);
  if (N < n) throw DimensionError("linear embedding needs N >= n");
  std::vector<HoloQ> c;
  for (int j = 0; j < n; ++j) c.push_back(zz(n, j));
  for (int j = n; j < N; ++j) c.emplace_back(n);
  return ball_map(n, std::move(c), HoloQ::constant(n, Q(1)));
}

}  // namespace ballmap
