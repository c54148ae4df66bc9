#pragma once

#include <iterator>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ballmap/divide.hpp"
#include "ballmap/linalg.hpp"
#include "ballmap/poly.hpp"

namespace ballmap {

enum class Model { Ball, Siegel };

inline const char* model_name(Model m) { return m == Model::Ball ? "ball" : "siegel"; }

/// Number of holomorphic z-slots used for an n-dimensional space in a model:
/// Ball keeps all n coordinates as z, Siegel uses z_1..z_{n-1} and w.
inline int z_slots(Model m, int n) { return m == Model::Ball ? n : n - 1; }

/// F = P / q from an n-dimensional model domain into an N-dimensional one.
/// In the Siegel model the components are ordered (f_1..f_{n-1}, phi.., g).
template <class S>
struct RationalMap {
  Model model = Model::Ball;
  int n = 0;
  int N = 0;
  std::vector<HoloPoly<S>> num;
  HoloPoly<S> den;

  int nz() const { return z_slots(model, n); }

  void validate() const {
    if (n < 1 || N < 1) throw DimensionError("map dimensions must be positive");
    if (model == Model::Siegel && n < 2) throw DimensionError("Siegel model needs n >= 2");
    if (static_cast<int>(num.size()) != N) throw DimensionError("component count differs from N");
    for (const auto& p : num)
      if (p.nz() != nz()) throw DimensionError("component variable count");
    if (den.nz() != nz()) throw DimensionError("denominator variable count");
    if (den.is_zero()) throw PreconditionError("zero denominator");
    if (model == Model::Ball) {
      for (const auto& p : num)
        if (p.uses_w()) throw DimensionError("ball-model component uses w");
      if (den.uses_w()) throw DimensionError("ball-model denominator uses w");
    }
  }

  /// Scales so that q(0) = 1, or, when q(0) = 0, so that the leading
  /// coefficient of q in the lexicographic order is 1. Common factors stay.
  RationalMap canonical() const {
    S c = den.constant_term();
    if (Field<S>::is_zero(c)) c = std::prev(den.terms().end())->second;
    if (c == S(1)) return *this;
    S inv = S(1) / c;
    RationalMap r = *this;
    for (auto& p : r.num) p *= inv;
    r.den *= inv;
    return r;
  }

  /// Value at a point of the source (Ball: n coordinates; Siegel: z then w).
  std::vector<S> evaluate(const std::vector<S>& pt) const {
    if (static_cast<int>(pt.size()) != n) throw DimensionError("evaluation point dimension");
    std::vector<S> zv(pt.begin(), pt.begin() + nz());
    S wv = model == Model::Siegel ? pt.back() : S(0);
    S q = den.evaluate(zv, wv);
    if (Field<S>::is_zero(q)) throw PreconditionError("denominator vanishes at evaluation point");
    std::vector<S> out;
    out.reserve(num.size());
    for (const auto& p : num) out.push_back(p.evaluate(zv, wv) / q);
    return out;
  }
};

using MapQ = RationalMap<GaussianRational>;
using MapF = RationalMap<Complex>;

namespace detail {

// Total degree of p counting every used slot (z and w) with weight one.
template <class S>
int plain_degree(const HoloPoly<S>& p) {
  return p.total_degree();
}

// Σ c_m Π args^m q^(d - |m|): the numerator of p(args / q) after multiplying by q^d.
template <class S>
HoloPoly<S> homogenized_substitute(const HoloPoly<S>& p, const std::vector<HoloPoly<S>>& args,
                                   const HoloPoly<S>& q, int d, int slots,
                                   std::vector<std::vector<HoloPoly<S>>>& arg_pow,
                                   std::vector<HoloPoly<S>>& q_pow) {
  const int onz = q.nz();
  auto pw = [](std::vector<HoloPoly<S>>& cache, const HoloPoly<S>& base, int e) -> const HoloPoly<S>& {
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * base);
    return cache[e];
  };
  HoloPoly<S> out(onz);
  for (const auto& [m, c] : p.terms()) {
    HoloPoly<S> t = HoloPoly<S>::constant(onz, c);
    int deg = 0;
    for (int s = 0; s < slots; ++s) {
      if (m[s] == 0) continue;
      deg += m[s];
      t = t * pw(arg_pow[s], args[s], m[s]);
    }
    if (d > deg) t = t * pw(q_pow, q, d - deg);
    out += t;
  }
  return out;
}

}  // namespace detail

/// F ∘ G. G's target space is F's source space; the result has G's source model.
template <class S>
RationalMap<S> compose(const RationalMap<S>& f, const RationalMap<S>& g) {
  if (g.N != f.n) throw DimensionError("compose: G's target dimension differs from F's source");
  const int slots = f.nz() + (f.model == Model::Siegel ? 1 : 0);
  int d = detail::plain_degree(f.den);
  for (const auto& p : f.num) d = std::max(d, detail::plain_degree(p));
  std::vector<std::vector<HoloPoly<S>>> arg_pow(static_cast<std::size_t>(slots));
  for (int s = 0; s < slots; ++s) arg_pow[s].push_back(HoloPoly<S>::constant(g.nz(), S(1)));
  std::vector<HoloPoly<S>> q_pow{HoloPoly<S>::constant(g.nz(), S(1))};
  RationalMap<S> r;
  r.model = g.model;
  r.n = g.n;
  r.N = f.N;
  for (const auto& p : f.num)
    r.num.push_back(detail::homogenized_substitute(p, g.num, g.den, d, slots, arg_pow, q_pow));
  r.den = detail::homogenized_substitute(f.den, g.num, g.den, d, slots, arg_pow, q_pow);
  return r.canonical();
}

/// RationalMap::model names the source model; the target model is implied by
/// context (only the Cayley pair crosses models).
template <class S>
RationalMap<S> identity_map(Model model, int n) {
  RationalMap<S> r;
  r.model = model;
  r.n = n;
  r.N = n;
  const int nz = z_slots(model, n);
  for (int j = 0; j < nz; ++j) r.num.push_back(HoloPoly<S>::z(nz, j));
  if (model == Model::Siegel) r.num.push_back(HoloPoly<S>::w(nz));
  r.den = HoloPoly<S>::constant(nz, S(1));
  return r;
}

/// ρ_n(z, w) = (2z / (1 - iw), (1 + iw) / (1 - iw)); Siegel source, ball target.
template <class S>
RationalMap<S> cayley(int n) {
  const int nz = n - 1;
  const S i = Field<S>::imag_unit();
  RationalMap<S> r;
  r.model = Model::Siegel;
  r.n = n;
  r.N = n;
  for (int j = 0; j < nz; ++j) r.num.push_back(HoloPoly<S>::z(nz, j, S(2)));
  r.num.push_back(HoloPoly<S>::constant(nz, S(1)) + HoloPoly<S>::w(nz, i));
  r.den = HoloPoly<S>::constant(nz, S(1)) - HoloPoly<S>::w(nz, i);
  return r;
}

/// ρ_n^{-1}(Z) = (Z' / (1 + Z_n), i(1 - Z_n) / (1 + Z_n)); ball source, Siegel target.
template <class S>
RationalMap<S> cayley_inverse(int n) {
  const S i = Field<S>::imag_unit();
  RationalMap<S> r;
  r.model = Model::Ball;
  r.n = n;
  r.N = n;
  for (int j = 0; j + 1 < n; ++j) r.num.push_back(HoloPoly<S>::z(n, j));
  r.num.push_back(HoloPoly<S>::constant(n, i) - HoloPoly<S>::z(n, n - 1, i));
  r.den = HoloPoly<S>::constant(n, S(1)) + HoloPoly<S>::z(n, n - 1);
  return r;
}

/// Ball <-> Siegel: ρ_N^{-1} ∘ F ∘ ρ_n or ρ_N ∘ F ∘ ρ_n^{-1}.
template <class S>
RationalMap<S> conjugate_model(const RationalMap<S>& f) {
  if (f.model == Model::Ball) return compose(cayley_inverse<S>(f.N), compose(f, cayley<S>(f.n)));
  return compose(cayley<S>(f.N), compose(f, cayley_inverse<S>(f.n)));
}

/// Equality as rational maps: P_F q_G = P_G q_F componentwise.
template <class S>
bool same_map(const RationalMap<S>& a, const RationalMap<S>& b) {
  if (a.model != b.model || a.n != b.n || a.N != b.N) return false;
  for (int k = 0; k < a.N; ++k)
    if (!(a.num[k] * b.den == b.num[k] * a.den)) return false;
  return true;
}

/// Outcome of a properness check. For the ball model the certificate is the
/// quotient Q with |P|^2 - |q|^2 = (|z|^2 - 1) Q; for the Siegel model the
/// boundary residual itself is reported and must vanish.
template <class S>
struct ProperVerdict {
  bool proper = false;
  std::optional<HermPoly<S>> certificate;
  HermPoly<S> residual;   // remainder (ball) or boundary expression (Siegel)
  std::optional<ClassKey> witness_class;  // a class with nonzero residual
  double residual_max = 0;
};

/// |P|^2 - |q|^2 for a ball-model map, as a polynomial in (z, z̄).
template <class S>
HermPoly<S> sphere_defect(const RationalMap<S>& f) {
  auto q = HermPoly<S>::from_holo(f.den);
  HermPoly<S> h = -(q * q.conj());
  for (const auto& p : f.num) {
    auto hp = HermPoly<S>::from_holo(p);
    h += hp * hp.conj();
  }
  return h;
}

/// (-Im g + |f~|^2) |q|^2 on w = u + i|z|^2 for a Siegel-model map.
template <class S>
HermPoly<S> heisenberg_defect(const RationalMap<S>& f) {
  const int nz = f.nz();
  auto q = restrict_to_boundary(f.den);
  auto qb = q.conj();
  auto g = restrict_to_boundary(f.num.back());
  // -Im(g/q)|q|^2 = -(g q̄ - ḡ q) / (2i)
  const S half_i = Field<S>::imag_unit() * (S(1) / S(2));
  HermPoly<S> h = (g * qb - g.conj() * q) * half_i;
  for (int k = 0; k + 1 < f.N; ++k) {
    auto p = restrict_to_boundary(f.num[k]);
    h += p * p.conj();
  }
  (void)nz;
  return h;
}

template <class S>
ProperVerdict<S> is_proper(const RationalMap<S>& f, double tol = 1e-9) {
  f.validate();
  ProperVerdict<S> v;
  const bool exact = Field<S>::kExact;
  if (f.model == Model::Ball) {
    auto h = sphere_defect(f);
    auto sphere = HermPoly<S>::norm_sq(f.nz()) - HermPoly<S>::constant(f.nz(), S(1));
    auto r = h.is_zero() ? DivisionResult<S>{HermPoly<S>(f.nz()), HermPoly<S>(f.nz())} : long_divide(h, sphere);
    double scale = std::max(1.0, h.max_abs_coeff());
    v.residual = r.remainder;
    v.residual_max = r.remainder.max_abs_coeff();
    v.proper = exact ? r.remainder.is_zero() : v.residual_max <= tol * scale;
    if (v.proper) v.certificate = r.quotient;
  } else {
    if (f.N < 1) throw DimensionError("Siegel target needs a g component");
    auto h = heisenberg_defect(f);
    v.residual = h;
    v.residual_max = h.max_abs_coeff();
    v.proper = exact ? h.is_zero() : v.residual_max <= tol;
  }
  if (!v.proper) {
    double best = -1;
    for (const auto& [k, part] : v.residual.classes())
      if (part.max_abs_coeff() > best) {
        best = part.max_abs_coeff();
        v.witness_class = k;
      }
  }
  return v;
}

/// A boundary point (z0, w0) of the Siegel domain: Im w0 = |z0|^2.
template <class S>
struct BoundaryPoint {
  std::vector<S> z0;
  S w0;

  static BoundaryPoint from_u(std::vector<S> z0, const S& u0) {
    S norm(0);
    for (const auto& x : z0) norm += x * Field<S>::conj(x);
    return {std::move(z0), u0 + Field<S>::imag_unit() * norm};
  }
  bool on_boundary(double tol = 0) const {
    S norm(0);
    for (const auto& x : z0) norm += x * Field<S>::conj(x);
    S d = (w0 - Field<S>::conj(w0)) / (S(2) * Field<S>::imag_unit()) - norm;
    return Field<S>::kExact ? Field<S>::is_zero(d) : Field<S>::magnitude(d) <= tol;
  }
  std::vector<S> coords() const {
    std::vector<S> c = z0;
    c.push_back(w0);
    return c;
  }
};

/// Deterministic boundary points with small rational coordinates whose z0
/// entries have nonzero real and imaginary parts; the first one is the
/// origin when include_origin is set.
std::vector<BoundaryPoint<GaussianRational>> sample_boundary_points(int nz, int count, std::uint64_t seed,
                                                                    bool include_origin = false);

template <class S>
BoundaryPoint<S> convert_point(const BoundaryPoint<GaussianRational>& p) {
  BoundaryPoint<S> r;
  for (const auto& x : p.z0) r.z0.push_back(Field<S>::from_gaussian(x));
  r.w0 = Field<S>::from_gaussian(p.w0);
  return r;
}

/// σ_p^0(z, w) = (z + z0, w + w0 + 2i<z, conj z0>).
template <class S>
RationalMap<S> make_sigma_p0(const BoundaryPoint<S>& p) {
  const int nz = static_cast<int>(p.z0.size());
  const S i = Field<S>::imag_unit();
  RationalMap<S> r = identity_map<S>(Model::Siegel, nz + 1);
  for (int j = 0; j < nz; ++j) r.num[j] += HoloPoly<S>::constant(nz, p.z0[j]);
  r.num[nz] += HoloPoly<S>::constant(nz, p.w0);
  for (int j = 0; j < nz; ++j) r.num[nz] += HoloPoly<S>::z(nz, j, S(2) * i * Field<S>::conj(p.z0[j]));
  return r;
}

/// Inverse translation: σ_{(-z0, -conj w0)}.
template <class S>
RationalMap<S> make_sigma_inverse(const BoundaryPoint<S>& p) {
  BoundaryPoint<S> q;
  for (const auto& x : p.z0) q.z0.push_back(S(0) - x);
  q.w0 = S(0) - Field<S>::conj(p.w0);
  return make_sigma_p0(q);
}

/// τ(z*, w*) = (z* - f~(p), w* - conj(g(p)) - 2i<z*, conj f~(p)>), which sends F(p) to 0.
template <class S>
RationalMap<S> make_tau_target(const std::vector<S>& value) {
  const int N = static_cast<int>(value.size());
  const int nz = N - 1;
  const S i = Field<S>::imag_unit();
  RationalMap<S> r = identity_map<S>(Model::Siegel, N);
  for (int j = 0; j < nz; ++j) r.num[j] -= HoloPoly<S>::constant(nz, value[j]);
  r.num[nz] -= HoloPoly<S>::constant(nz, Field<S>::conj(value[nz]));
  for (int j = 0; j < nz; ++j) r.num[nz] -= HoloPoly<S>::z(nz, j, S(2) * i * Field<S>::conj(value[j]));
  return r;
}

template <class S>
RationalMap<S> make_tau_pF(const RationalMap<S>& f, const BoundaryPoint<S>& p) {
  if (f.model != Model::Siegel) throw PreconditionError("make_tau_pF: Siegel-model map required");
  return make_tau_target(f.evaluate(p.coords()));
}

/// F_p = τ_p^F ∘ F ∘ σ_p^0, so that F_p(0) = 0.
template <class S>
RationalMap<S> translate_basepoint(const RationalMap<S>& f, const BoundaryPoint<S>& p) {
  if (f.model != Model::Siegel) throw PreconditionError("translate_basepoint: Siegel-model map required");
  if (static_cast<int>(p.z0.size()) != f.nz()) throw DimensionError("base point dimension");
  if (!p.on_boundary(1e-12)) throw PreconditionError("base point is not on the Heisenberg boundary");
  return compose(make_tau_pF(f, p), compose(f, make_sigma_p0(p)));
}

/// Isotropy element of Aut_0 of the m-dimensional Siegel domain:
/// (z, w) -> (λ(z + a w)U / δ, λ^2 w / δ), δ = 1 - 2i<z, conj a> - (r + i|a|^2) w.
/// U acts on row vectors.
template <class S>
RationalMap<S> make_isotropy(int m, const S& lambda, const S& r, const std::vector<S>& a, const Matrix<S>& u) {
  const int nz = m - 1;
  if (static_cast<int>(a.size()) != nz || u.rows() != nz || u.cols() != nz)
    throw DimensionError("isotropy parameter shapes");
  const S i = Field<S>::imag_unit();
  S asq(0);
  for (const auto& x : a) asq += x * Field<S>::conj(x);
  HoloPoly<S> delta = HoloPoly<S>::constant(nz, S(1)) - HoloPoly<S>::w(nz, r + i * asq);
  for (int j = 0; j < nz; ++j) delta -= HoloPoly<S>::z(nz, j, S(2) * i * Field<S>::conj(a[j]));
  std::vector<HoloPoly<S>> v;
  for (int j = 0; j < nz; ++j) v.push_back(HoloPoly<S>::z(nz, j) + HoloPoly<S>::w(nz, a[j]));
  RationalMap<S> res;
  res.model = Model::Siegel;
  res.n = m;
  res.N = m;
  for (int l = 0; l < nz; ++l) {
    HoloPoly<S> c(nz);
    for (int k = 0; k < nz; ++k)
      if (!Field<S>::is_zero(u(k, l))) c += v[k] * (lambda * u(k, l));
    res.num.push_back(std::move(c));
  }
  res.num.push_back(HoloPoly<S>::w(nz, lambda * lambda));
  res.den = std::move(delta);
  return res;
}

/// ρ ∘ A ∘ ρ^{-1}: a ball automorphism from a Siegel one.
template <class S>
RationalMap<S> siegel_to_ball_automorphism(const RationalMap<S>& a) {
  return compose(cayley<S>(a.N), compose(a, cayley_inverse<S>(a.n)));
}

/// Exact unitary acting on ball coordinates: Z -> Z U (row vectors).
template <class S>
RationalMap<S> unitary_map(const Matrix<S>& u) {
  const int n = u.rows();
  RationalMap<S> r;
  r.model = Model::Ball;
  r.n = n;
  r.N = n;
  for (int l = 0; l < n; ++l) {
    HoloPoly<S> c(n);
    for (int k = 0; k < n; ++k)
      if (!Field<S>::is_zero(u(k, l))) c += HoloPoly<S>::z(n, k, u(k, l));
    r.num.push_back(std::move(c));
  }
  r.den = HoloPoly<S>::constant(n, S(1));
  return r;
}

/// Seeded exact unitary: a signed permutation with a few 3-4-5 plane rotations.
Matrix<GaussianRational> random_exact_unitary(int n, std::mt19937_64& rng);

/// Seeded exact ball automorphism: unitary ∘ (Cayley conjugate of a Heisenberg
/// translation and a rational isotropy) ∘ unitary.
MapQ random_ball_automorphism(int n, std::uint64_t seed);

/// Appends N_extra zero components.
template <class S>
RationalMap<S> zero_pad(const RationalMap<S>& f, int extra) {
  RationalMap<S> r = f;
  for (int k = 0; k < extra; ++k) r.num.emplace_back(f.nz());
  r.N += extra;
  if (f.model == Model::Siegel && extra > 0) {
    // keep g last
    std::swap(r.num[f.N - 1], r.num.back());
  }
  return r;
}

/// Dimension of the smallest affine subspace containing the image: rank of
/// the coefficient matrix of (P_1, .., P_N, q) minus one.
template <class S>
int affine_hull_dim(const RationalMap<S>& f, double rel_tol = 1e-9) {
  std::map<Monomial, int> rows;
  auto collect = [&](const HoloPoly<S>& p) {
    for (const auto& t : p.terms()) rows.try_emplace(t.first, static_cast<int>(rows.size()));
  };
  for (const auto& p : f.num) collect(p);
  collect(f.den);
  Matrix<S> m(static_cast<int>(rows.size()), f.N + 1);
  for (int k = 0; k < f.N; ++k)
    for (const auto& [mono, c] : f.num[k].terms()) m(rows[mono], k) = c;
  for (const auto& [mono, c] : f.den.terms()) m(rows[mono], f.N) = c;
  return rank(m, rel_tol) - 1;
}

/// Φ = (z_1, .., z_{n-1}, z_n H(z)) for a ball-model H: B^n -> B^{N'}.
template <class S>
RationalMap<S> whitney_lift(const RationalMap<S>& h) {
  if (h.model != Model::Ball) throw PreconditionError("whitney_lift: ball-model map required");
  const int n = h.n;
  RationalMap<S> r;
  r.model = Model::Ball;
  r.n = n;
  r.N = n - 1 + h.N;
  for (int j = 0; j + 1 < n; ++j) r.num.push_back(HoloPoly<S>::z(n, j) * h.den);
  for (const auto& p : h.num) r.num.push_back(HoloPoly<S>::z(n, n - 1) * p);
  r.den = h.den;
  return r;
}

/// Smallest |q| over deterministic sample points of the closed source domain
/// (ball: |Z| <= 1; Siegel: Im w >= |z|^2 within a bounded window).
double sample_denominator(const MapF& f, int count, std::uint64_t seed);

/// Map file text: header `model=... n=... N=...`, one component per line,
/// then `denominator: ...`.
std::string write_map(const MapQ& f);
MapQ read_map_exact(const std::string& text);
MapF read_map_float(const std::string& text);

template <class T, class S>
RationalMap<T> convert_map(const RationalMap<S>& f) {
  RationalMap<T> r;
  r.model = f.model;
  r.n = f.n;
  r.N = f.N;
  for (const auto& p : f.num) r.num.push_back(convert<T>(p));
  r.den = convert<T>(f.den);
  return r;
}

}  // namespace ballmap
