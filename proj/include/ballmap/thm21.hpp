#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ballmap/normalize.hpp"

namespace ballmap {

/// Jet in the rank-κ normal form. Components are ordered
/// (f_1..f_{n-1}, Φ0 over S0 in lex order, Φ1, g).
template <class S>
struct Thm21Normalization {
  MapJet<S> jet;
  int kappa = 0;
  std::vector<S> mu;                      // μ_1 >= .. >= μ_κ > 0
  std::vector<std::pair<int, int>> S0;    // 0-based (j, l), j <= l
  HermPoly<S> compat_residual;            // Lemma 2.1 identity of the last pass
  bool cor34_applied = false;             // Φ1 unitary of the (3,0) normalization used
  bool phi1_30_vanishes = false;          // Φ1^{(3,0)} ≡ 0 branch
  double cor34_residual = 0;              // max |Φ1^{(3,0)} - (E_jl, 0)| after the unitary

  int n() const { return jet.n; }
  int N() const { return jet.N; }
  int nz() const { return jet.nz(); }
  int s0_count() const { return static_cast<int>(S0.size()); }
  int s1_count() const { return jet.N - jet.n - s0_count(); }
  int s0_slot(int i) const { return nz() + i; }
  int s1_slot(int i) const { return nz() + s0_count() + i; }
  int g_slot() const { return jet.N - 1; }
  /// μ_jl^2: μ_j + μ_l for j < l < κ, μ_j otherwise.
  S mu_sq(int j, int l) const { return (j < l && l < kappa) ? mu[j] + mu[l] : mu[j]; }

  std::vector<HoloPoly<S>> f() const { return slice(0, nz()); }
  std::vector<HoloPoly<S>> phi0() const { return slice(nz(), s0_count()); }
  std::vector<HoloPoly<S>> phi1() const { return slice(nz() + s0_count(), s1_count()); }

 private:
  std::vector<HoloPoly<S>> slice(int from, int count) const {
    return {jet.comps.begin() + from, jet.comps.begin() + from + count};
  }
};

/// Range of N (for given n, κ) in which the Φ1^{(3,0)} normalization applies.
inline bool cor34_applies(int n, int N, int kappa) {
  return kappa >= 2 && (kappa + 1) * n - kappa <= N && N <= (kappa + 2) * n - kappa * (kappa + 1) + kappa - 2;
}

namespace detail {

inline constexpr double kRankRelTol = 1e-7;

template <class S>
int count_positive(const std::vector<S>& vals) {
  if constexpr (Field<S>::kExact) {
    int k = 0;
    for (const auto& v : vals)
      if (sgn(v.re()) > 0) ++k;
    return k;
  } else {
    double top = 1.0;
    for (const auto& v : vals) top = std::max(top, v.real());
    int k = 0;
    for (const auto& v : vals)
      if (v.real() > kRankRelTol * top) ++k;
    return k;
  }
}

template <class S>
RationalMap<S> linear_isotropy(int m, const Matrix<S>& u) {
  return make_isotropy<S>(m, S(1), S(0), zeros<S>(m - 1), u);
}

/// Diagonalizes A by a source unitary (undone on the f-block of the target)
/// and rotates φ so the S0 components carry μ_jl z_j z_l.
template <class S>
MapJet<S> diagonalize_and_fix_phi(MapJet<S> j, int& kappa, std::vector<S>& mu,
                                  std::vector<std::pair<int, int>>& s0) {
  const int nz = j.nz(), n = j.n, N = j.N;
  auto [vals, v] = sorted_eigen(matrix_A(j));
  kappa = count_positive(vals);
  mu.assign(vals.begin(), vals.begin() + kappa);
  if constexpr (!Field<S>::kExact)
    for (auto& x : mu) x = S(x.real(), 0.0);
  j = apply_source(j, linear_isotropy<S>(n, v.adjoint()));
  Matrix<S> ut = Matrix<S>::identity(N - 1);
  for (int r = 0; r < nz; ++r)
    for (int c = 0; c < nz; ++c) ut(r, c) = v(r, c);
  j = apply_target(linear_isotropy<S>(N, ut), j);

  s0 = index_set_S0(kappa, nz);
  const int p = N - n;
  if (p < static_cast<int>(s0.size())) throw PreconditionError("fewer φ components than #S0");
  Matrix<S> cols(p, static_cast<int>(s0.size()));
  for (int i = 0; i < static_cast<int>(s0.size()); ++i) {
    const Monomial m = slot_monomial({s0[i].first, s0[i].second});
    S norm2(0);
    for (int k = 0; k < p; ++k) {
      const S c = j.comps[nz + k].coeff(m);
      norm2 += c * Field<S>::conj(c);
    }
    const S inv = S(1) / sqrt_or_throw(norm2, "|φ^{(2,0)}| coefficient norm");
    for (int k = 0; k < p; ++k) cols(k, i) = Field<S>::conj(j.comps[nz + k].coeff(m)) * inv;
  }
  const Matrix<S> up = unitary_completion(cols);
  ut = Matrix<S>::identity(N - 1);
  for (int r = 0; r < p; ++r)
    for (int c = 0; c < p; ++c) ut(nz + r, nz + c) = up(r, c);
  return apply_target(linear_isotropy<S>(N, ut), j);
}

}  // namespace detail

/// ξ_j(z) = conj(e_j) . Φ0^{(2,0)}(z), with Φ0^{(1,1)} = Σ e_j z_j.
template <class S>
std::vector<HoloPoly<S>> xi_polys(const Thm21Normalization<S>& t) {
  const int nz = t.nz();
  const auto phi0 = t.phi0();
  std::vector<HoloPoly<S>> xi;
  for (int j = 0; j < t.kappa; ++j) {
    HoloPoly<S> x(nz);
    for (const auto& p : phi0) x += p.block(2, 0) * Field<S>::conj(p.coeff(slot_monomial({j, nz})));
    xi.push_back(std::move(x));
  }
  return xi;
}

/// Φ1^{(3,0)} predicted by the (3,0) normalization, one entry per pair j < l < κ:
/// (2/sqrt(μ_j + μ_l)) (sqrt(μ_j/μ_l) z_j ξ_l - sqrt(μ_l/μ_j) z_l ξ_j).
template <class S>
std::vector<HoloPoly<S>> cor34_expected(const Thm21Normalization<S>& t) {
  const int nz = t.nz();
  const auto xi = xi_polys(t);
  std::vector<HoloPoly<S>> out;
  for (int j = 0; j < t.kappa; ++j)
    for (int l = j + 1; l < t.kappa; ++l) {
      const S c = S(2) / detail::sqrt_or_throw(t.mu[j] + t.mu[l], "μ_j + μ_l");
      const S r = detail::sqrt_or_throw(t.mu[j] / t.mu[l], "μ_j / μ_l");
      out.push_back((HoloPoly<S>::z(nz, j, r) * xi[l] - HoloPoly<S>::z(nz, l, S(1) / r) * xi[j]) * c);
    }
  return out;
}

namespace detail {

/// Rotates Φ1 so that Φ1^{(3,0)} = (E_jl, 0'). Float mode solves the
/// Procrustes problem; exact mode accepts only the already normalized case.
template <class S>
void apply_cor34(Thm21Normalization<S>& t, double tol) {
  const auto expected = cor34_expected(t);
  const int s1 = t.s1_count();
  if (static_cast<int>(expected.size()) > s1) throw PreconditionError("Φ1 has fewer components than pairs j < l");
  std::vector<HoloPoly<S>> have;
  for (const auto& p : t.phi1()) have.push_back(p.block(3, 0));
  std::vector<Monomial> rows;
  {
    std::map<Monomial, int> seen;
    using Polys = std::vector<HoloPoly<S>>;
    for (const Polys* set : std::initializer_list<const Polys*>{&have, &expected})
      for (const auto& p : *set)
        for (const auto& kv : p.terms())
          if (seen.emplace(kv.first, 0).second) rows.push_back(kv.first);
  }
  Matrix<S> c(static_cast<int>(rows.size()), s1), d(static_cast<int>(rows.size()), s1);
  double cmax = 0;
  for (int r = 0; r < c.rows(); ++r) {
    for (int k = 0; k < s1; ++k) {
      c(r, k) = have[k].coeff(rows[r]);
      cmax = std::max(cmax, Field<S>::magnitude(c(r, k)));
    }
    for (int k = 0; k < static_cast<int>(expected.size()); ++k) d(r, k) = expected[k].coeff(rows[r]);
  }
  t.phi1_30_vanishes = Field<S>::kExact ? cmax == 0 : cmax <= tol;
  Matrix<S> u = Matrix<S>::identity(s1);
  if constexpr (Field<S>::kExact) {
    if (!(c == d)) throw ExactUnsolvable("Φ1 (3,0) normalization needs an irrational unitary");
  } else {
    if (s1 > 0 && c.rows() > 0) u = procrustes_unitary(c, d);
  }
  double res = 0;
  const Matrix<S> cu = c * u;
  for (int r = 0; r < c.rows(); ++r)
    for (int k = 0; k < s1; ++k) res = std::max(res, Field<S>::magnitude(cu(r, k) - d(r, k)));
  t.cor34_residual = res;
  const int nz = t.nz(), base = nz + t.s0_count();
  Matrix<S> ut = Matrix<S>::identity(t.N() - 1);
  for (int r = 0; r < s1; ++r)
    for (int k = 0; k < s1; ++k) ut(base + r, base + k) = u(r, k);
  t.jet = apply_target(linear_isotropy<S>(t.N(), ut), t.jet);
  t.cor34_applied = true;
}

}  // namespace detail

/// Normal form of a jet of F_p (F_p(0) = 0) with geometric rank 1 <= κ <= n-2:
/// Lemma 2.1, diagonalization of A, the source isotropy removing f_l^{(0,2)},
/// a second Lemma 2.1 pass, and (when it applies) the Φ1^{(3,0)} rotation.
template <class S>
Thm21Normalization<S> normalize_thm21_jet(const MapJet<S>& jet, double tol = 1e-9) {
  const int nz = jet.nz(), n = jet.n;
  Thm21Normalization<S> t;
  MapJet<S> j = normalize_lemma21_jet(jet).jet;
  j = detail::diagonalize_and_fix_phi(j, t.kappa, t.mu, t.S0);
  if (t.kappa < 1 || t.kappa > n - 2)
    throw PreconditionError("geometric rank " + std::to_string(t.kappa) + " is outside 1..n-2");
  std::vector<S> a = detail::zeros<S>(nz);
  const S two_i = S(2) * Field<S>::imag_unit();
  for (int l = 0; l < t.kappa; ++l) a[l] = two_i * j.comps[l].coeff(slot_monomial({nz, nz})) / t.mu[l];
  j = apply_source(j, make_isotropy<S>(n, S(1), S(0), a, Matrix<S>::identity(nz)));
  auto second = normalize_lemma21_jet(j);
  t.compat_residual = second.compat_residual;
  const int kappa = t.kappa;
  t.jet = detail::diagonalize_and_fix_phi(second.jet, t.kappa, t.mu, t.S0);
  if (t.kappa != kappa) throw Error("geometric rank changed during normalization");
  if (cor34_applies(n, jet.N, t.kappa)) detail::apply_cor34(t, tol);
  return t;
}

template <class S>
Thm21Normalization<S> normalize_thm21(const RationalMap<S>& f, const BoundaryPoint<S>& p, int order = 5,
                                      double tol = 1e-9) {
  return normalize_thm21_jet(jet_at(f, p, order), tol);
}

/// One clause of the normal form with the terms that violate it.
template <class S>
struct ClauseResidual {
  std::string clause;
  HoloPoly<S> offending;
  double max_abs = 0;
};

template <class S>
struct Thm21Check {
  std::vector<ClauseResidual<S>> clauses;
  bool ok = true;
  double max_residual = 0;
};

/// Checks the normal-form clauses through weighted order `max_weight`. In the
/// S0 clauses the whole weight-2 part must be μ_jl z_j z_l.
template <class S>
Thm21Check<S> verify_thm21_form(const Thm21Normalization<S>& t, int max_weight, double tol = 1e-9) {
  const int nz = t.nz(), kappa = t.kappa;
  const S half_i = Field<S>::imag_unit() / S(2);
  auto in_ideal = [&](const Monomial& m) {
    for (int j = 0; j < kappa; ++j)
      if (m[j] > 0) return true;
    return false;
  };
  auto close = [&](const S& a, const S& b) {
    return Field<S>::kExact ? a == b : Field<S>::magnitude(a - b) <= tol;
  };
  Thm21Check<S> out;
  auto record = [&](std::string name, HoloPoly<S> bad) {
    const double m = bad.max_abs_coeff();
    if constexpr (!Field<S>::kExact)
      bad = bad.map_coeffs([&](const S& c) { return Field<S>::magnitude(c) <= tol ? S(0) : c; });
    if (!bad.is_zero()) out.ok = false;
    out.max_residual = std::max(out.max_residual, m);
    out.clauses.push_back({std::move(name), std::move(bad), m});
  };
  // `expect` lists the exact terms a component must have; `allowed` says
  // which other terms may appear.
  auto check = [&](const HoloPoly<S>& h, const std::vector<std::pair<Monomial, S>>& expect, auto allowed) {
    HoloPoly<S> bad(nz);
    const HoloPoly<S> cut = h.truncated(max_weight);
    for (const auto& [m, c] : cut.terms()) {
      bool listed = false;
      for (const auto& [em, ec] : expect)
        if (em == m) {
          listed = true;
          if (!close(c, ec)) bad.add_term(m, c - ec);
        }
      if (!listed && !allowed(m, h.weight(m))) bad.add_term(m, c);
    }
    for (const auto& [em, ec] : expect)
      if (h.weight(em) <= max_weight && !h.terms().count(em)) bad.add_term(em, S(0) - ec);
    return bad;
  };
  const auto& c = t.jet.comps;
  for (int l = 0; l < nz; ++l) {
    const std::string name = "f_" + std::to_string(l + 1);
    if (l < kappa) {
      record(name, check(c[l], {{slot_monomial({l}), S(1)}, {slot_monomial({l, nz}), half_i * t.mu[l]}},
                         [&](const Monomial& m, int w) {
                           if (w <= 3) return false;
                           if (w == 4) return in_ideal(m) && m[nz] == 1;
                           return in_ideal(m);
                         }));
    } else {
      record(name, check(c[l], {{slot_monomial({l}), S(1)}}, [](const Monomial&, int) { return false; }));
    }
  }
  for (int i = 0; i < t.s0_count(); ++i) {
    const auto [j, l] = t.S0[i];
    const Monomial lead = slot_monomial({j, l});
    const S cl = c[t.s0_slot(i)].coeff(lead);
    HoloPoly<S> bad = check(c[t.s0_slot(i)], {}, [&](const Monomial& m, int w) {
      if (w < 2) return false;
      if (w == 2) return m == lead;
      return in_ideal(m);
    });
    // μ_jl z_j z_l: a positive real with square μ_jl^2.
    const S mu2 = t.mu_sq(j, l);
    const bool lead_ok = detail::positive_real(cl, tol) && close(cl * cl, mu2);
    if (!lead_ok) bad.add_term(lead, Field<S>::is_zero(cl) ? S(0) - mu2 : cl);
    record("phi_" + std::to_string(j + 1) + std::to_string(l + 1), bad);
  }
  for (int i = 0; i < t.s1_count(); ++i)
    record("Phi1_" + std::to_string(i + 1),
           check(c[t.s1_slot(i)], {}, [&](const Monomial& m, int w) { return w >= 3 && in_ideal(m); }));
  record("g", check(c[t.g_slot()], {{slot_monomial({nz}), S(1)}}, [](const Monomial&, int) { return false; }));
  return out;
}

}  // namespace ballmap
