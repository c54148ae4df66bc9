#pragma once

#include <initializer_list>
#include <vector>

#include "ballmap/maps.hpp"

namespace ballmap {

/// Weighted Taylor jet of a Siegel-model map with F(0) = 0, truncated at
/// weighted order `order`. Components are (f~_1..f~_{N-1}, g).
template <class S>
struct MapJet {
  int n = 0;
  int N = 0;
  int order = 0;
  std::vector<HoloPoly<S>> comps;

  int nz() const { return n - 1; }
  const HoloPoly<S>& g() const { return comps.back(); }
  /// H^{(k,l)} of component c.
  HoloPoly<S> block(int c, int k, int l) const { return comps[c].block(k, l); }
};

/// 1/q through weighted order T; q(0) must be nonzero.
template <class S>
HoloPoly<S> series_inverse(const HoloPoly<S>& q, int T) {
  const S c = q.constant_term();
  if (Field<S>::is_zero(c)) throw PreconditionError("series_inverse: q(0) = 0");
  const S inv = S(1) / c;
  const int nz = q.nz();
  HoloPoly<S> x = HoloPoly<S>::constant(nz, S(1)) - q * inv;
  HoloPoly<S> r = HoloPoly<S>::constant(nz, S(1));
  HoloPoly<S> p = r;
  for (int k = 1; k <= T; ++k) {
    p = mul_truncated(p, x, T);
    if (p.is_zero()) break;
    r += p;
  }
  return r * inv;
}

/// Float jets carry rounding residue in the constant terms; anything at or
/// below this magnitude is treated as zero by jet_of.
inline constexpr double kJetConstantTol = 1e-11;

template <class S>
MapJet<S> jet_of(const RationalMap<S>& f, int T) {
  if (f.model != Model::Siegel) throw PreconditionError("jet_of: Siegel-model map required");
  f.validate();
  const RationalMap<S> g = f.canonical();
  if (Field<S>::is_zero(g.den.constant_term())) throw PreconditionError("jet_of: q(0) = 0");
  MapJet<S> j{f.n, f.N, T, {}};
  const HoloPoly<S> inv = series_inverse(g.den, T);
  for (const auto& p : g.num) {
    S c = p.constant_term();
    bool zero = Field<S>::kExact ? Field<S>::is_zero(c) : Field<S>::magnitude(c) <= kJetConstantTol;
    if (!zero) throw PreconditionError("jet_of: F(0) != 0");
    HoloPoly<S> t = p.truncated(T);
    t.add_term(Monomial{}, S(0) - c);
    j.comps.push_back(mul_truncated(t, inv, T));
  }
  return j;
}

/// τ ∘ J for a Siegel self-map τ of the target fixing 0.
template <class S>
MapJet<S> apply_target(const RationalMap<S>& tau, const MapJet<S>& j) {
  if (tau.n != j.N || tau.N != j.N) throw DimensionError("apply_target: dimension mismatch");
  const int T = j.order;
  MapJet<S> r{j.n, j.N, T, {}};
  if (tau.den.total_degree() == 0) {
    const S inv = S(1) / tau.den.constant_term();
    for (auto& p : substitute_all(tau.num, j.comps, T)) r.comps.push_back(p * inv);
    return r;
  }
  const HoloPoly<S> inv = series_inverse(tau.den.substitute(j.comps, T), T);
  for (const auto& p : substitute_all(tau.num, j.comps, T)) r.comps.push_back(mul_truncated(p, inv, T));
  return r;
}

/// J ∘ σ for a Siegel self-map σ of the source fixing 0.
template <class S>
MapJet<S> apply_source(const MapJet<S>& j, const RationalMap<S>& sigma) {
  if (sigma.n != j.n || sigma.N != j.n) throw DimensionError("apply_source: dimension mismatch");
  const int T = j.order;
  const HoloPoly<S> inv = series_inverse(sigma.den, T);
  std::vector<HoloPoly<S>> args;
  for (const auto& p : sigma.num) args.push_back(mul_truncated(p, inv, T));
  return MapJet<S>{j.n, j.N, T, substitute_all(j.comps, args, T)};
}

/// Jet of F_p = τ_p^F ∘ F ∘ σ_p^0 through weighted order T. Truncates while
/// substituting, so it never expands the translated map in full.
template <class S>
MapJet<S> jet_at(const RationalMap<S>& f, const BoundaryPoint<S>& p, int T) {
  if (f.model != Model::Siegel) throw PreconditionError("jet_at: Siegel-model map required");
  if (static_cast<int>(p.z0.size()) != f.nz()) throw DimensionError("base point dimension");
  if (!p.on_boundary(1e-12)) throw PreconditionError("base point is not on the Heisenberg boundary");
  const RationalMap<S> sigma = make_sigma_p0(p);
  std::vector<HoloPoly<S>> all = f.num;
  all.push_back(f.den);
  all = substitute_all(all, sigma.num, T);
  const HoloPoly<S> q = all.back();
  if (Field<S>::is_zero(q.constant_term())) throw PreconditionError("jet_at: q(p) = 0");
  const HoloPoly<S> inv = series_inverse(q, T);
  MapJet<S> raw{f.n, f.N, T, {}};
  for (int k = 0; k < f.N; ++k) raw.comps.push_back(mul_truncated(all[k], inv, T));
  MapJet<S> j = apply_target(make_tau_pF(f, p), raw);
  for (auto& c : j.comps) {
    const S k = c.constant_term();
    if (Field<S>::is_zero(k)) continue;
    if (Field<S>::kExact || Field<S>::magnitude(k) > kJetConstantTol) throw PreconditionError("jet_at: F_p(0) != 0");
    c.add_term(Monomial{}, S(0) - k);
  }
  return j;
}

/// Monomial with one unit of exponent per listed slot (repeats allowed).
inline Monomial slot_monomial(std::initializer_list<int> slots) {
  Monomial m;
  for (int s : slots) ++m[s];
  return m;
}

}  // namespace ballmap
