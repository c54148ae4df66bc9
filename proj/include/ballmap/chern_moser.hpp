#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ballmap/divide.hpp"
#include "ballmap/normalize.hpp"

namespace ballmap {

/// A lemma was invoked outside its hypotheses on the sizes of its inputs.
class LemmaInapplicable : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Weight-d part of -Im g + |f|^2 + |φ|^2 with w = u + i|z|^2. Needs every
/// block of weight <= d, so the jet must be truncated at order >= d.
template <class S>
HermPoly<S> expand_defining(const MapJet<S>& j, int d) {
  if (d < 0) throw PreconditionError("expand_defining: negative weight");
  if (j.order < d)
    throw PreconditionError("expand_defining: jet truncated at " + std::to_string(j.order) + " < " +
                            std::to_string(d));
  const int nz = j.nz();
  HermPoly<S> out(nz);
  // Components vanish at 0, so only parts of weight 1..d-1 pair up.
  for (int c = 0; c + 1 < j.N; ++c) {
    std::vector<HermPoly<S>> part;
    for (int a = 0; a < d; ++a) part.push_back(restrict_to_boundary(j.comps[c].weighted_part(a)));
    for (int a = 1; a < d; ++a) {
      if (part[a].is_zero() || part[d - a].is_zero()) continue;
      out += part[a].conj() * part[d - a];
    }
  }
  const HermPoly<S> g = restrict_to_boundary(j.g().weighted_part(d));
  // -Im g = -(g - conj g) / (2i) = (i/2)(g - conj g).
  out += (g - g.conj()) * (Field<S>::imag_unit() / S(2));
  return out;
}

/// μ_jl^2 of the rank-κ normal form: μ_j + μ_l for j < l < κ, μ_j otherwise.
template <class S>
S mu_pair_sq(const std::vector<S>& mu, int kappa, int j, int l) {
  return (j < l && l < kappa) ? mu[j] + mu[l] : mu[j];
}

/// X_jl with μ_jl Λ_jl = c * X_jl over S0 (0-based pairs, j <= l, j < κ):
/// z_j Γ_l + z_l Γ_j for j < l < κ, z_j Γ_j on the diagonal, z_l Γ_j for l >= κ.
template <class S>
std::vector<HoloPoly<S>> lambda_numerators(const std::vector<HoloPoly<S>>& gamma, int kappa, int nz) {
  std::vector<HoloPoly<S>> out;
  for (int j = 0; j < kappa; ++j)
    for (int l = j; l < nz; ++l) {
      if (j == l) {
        out.push_back(HoloPoly<S>::z(nz, j) * gamma[j]);
      } else if (l < kappa) {
        out.push_back(HoloPoly<S>::z(nz, j) * gamma[l] + HoloPoly<S>::z(nz, l) * gamma[j]);
      } else {
        out.push_back(HoloPoly<S>::z(nz, l) * gamma[j]);
      }
    }
  return out;
}

/// Right side of the Λ pairing identity in Γ^1, Γ^2 (no radicals):
/// 4|z|^2 Σ conj(Γ^1_j) Γ^2_j / μ_j
///   - Σ_{j<l} 4/(μ_j μ_l (μ_j+μ_l)) conj(μ_j z_j Γ^1_l - μ_l z_l Γ^1_j)(μ_j z_j Γ^2_l - μ_l z_l Γ^2_j).
template <class S>
HermPoly<S> lambda_pairing_rhs(const std::vector<HoloPoly<S>>& g1, const std::vector<HoloPoly<S>>& g2,
                               const std::vector<S>& mu, int kappa, int nz) {
  using H = HermPoly<S>;
  H diag(nz);
  for (int j = 0; j < kappa; ++j) diag += H::conj_of(g1[j]) * H::from_holo(g2[j]) * (S(1) / mu[j]);
  H out = diag * H::norm_sq(nz) * S(4);
  for (int j = 0; j < kappa; ++j)
    for (int l = j + 1; l < kappa; ++l) {
      auto cross = [&](const std::vector<HoloPoly<S>>& g) {
        return HoloPoly<S>::z(nz, j, mu[j]) * g[l] - HoloPoly<S>::z(nz, l, mu[l]) * g[j];
      };
      const S c = S(4) / (mu[j] * mu[l] * (mu[j] + mu[l]));
      out -= H::conj_of(cross(g1)) * H::from_holo(cross(g2)) * c;
    }
  return out;
}

/// Both sides of the Λ pairing identity for μ_jl Λ^h_jl = 2i X^h_jl, each
/// multiplied by P = Π_j μ_j Π_{j<l<κ} (μ_j + μ_l) so no radical appears.
template <class S>
std::pair<HermPoly<S>, HermPoly<S>> lemma31_combine(const std::vector<HoloPoly<S>>& g1,
                                                    const std::vector<HoloPoly<S>>& g2, const std::vector<S>& mu,
                                                    int kappa, int n, int N) {
  using H = HermPoly<S>;
  const int nz = n - 1;
  if (kappa < 1 || kappa > nz) throw PreconditionError("lemma31_combine: κ must lie in 1..n-1");
  if (static_cast<int>(g1.size()) != kappa || static_cast<int>(g2.size()) != kappa ||
      static_cast<int>(mu.size()) < kappa)
    throw DimensionError("lemma31_combine: Γ and μ need κ entries");
  if (kappa * nz - kappa * (kappa - 1) / 2 > N - n) throw DimensionError("lemma31_combine: #S0 exceeds N - n");
  for (const auto& p : g1)
    if (p.nz() != nz) throw DimensionError("lemma31_combine: Γ must be polynomials in n-1 variables");
  for (const auto& p : g2)
    if (p.nz() != nz) throw DimensionError("lemma31_combine: Γ must be polynomials in n-1 variables");
  S prod(1);
  for (int j = 0; j < kappa; ++j) {
    if (!detail::positive_real(mu[j], 0.0)) throw PreconditionError("lemma31_combine: μ_j must be positive");
    prod *= mu[j];
    for (int l = j + 1; l < kappa; ++l) prod *= mu[j] + mu[l];
  }
  const auto x1 = lambda_numerators(g1, kappa, nz);
  const auto x2 = lambda_numerators(g2, kappa, nz);
  // conj(2i X1 / μ_jl) (2i X2 / μ_jl) = 4 conj(X1) X2 / μ_jl^2.
  H lhs(nz);
  int k = 0;
  for (int j = 0; j < kappa; ++j)
    for (int l = j; l < nz; ++l, ++k)
      lhs += H::conj_of(x1[k]) * H::from_holo(x2[k]) * (S(4) / mu_pair_sq(mu, kappa, j, l));
  return {lhs * prod, lambda_pairing_rhs(g1, g2, mu, kappa, nz) * prod};
}

struct HuangVerdict {
  bool hypothesis_holds = false;   // Σ a_i conj(b_i) is |z|^2 times a polynomial
  bool conclusion_holds = false;   // Σ a_i conj(b_i) ≡ 0
  bool violation() const { return hypothesis_holds && !conclusion_holds; }
};

/// Checks the divisibility lemma on polynomial data: with k <= n-2 terms,
/// |z|^2 | Σ a_i conj(b_i) forces Σ a_i conj(b_i) ≡ 0.
template <class S>
HuangVerdict huang_lemma_check(const std::vector<HoloPoly<S>>& a, const std::vector<HoloPoly<S>>& b, int n,
                               double tol = 0.0) {
  using H = HermPoly<S>;
  const int nz = n - 1;
  const int k = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != k) throw DimensionError("huang_lemma_check: a and b differ in length");
  if (k < 1 || k > n - 2)
    throw LemmaInapplicable("huang_lemma_check: needs 1 <= k <= n-2, got k = " + std::to_string(k));
  H s(nz);
  for (int i = 0; i < k; ++i) {
    if (a[i].nz() != nz || b[i].nz() != nz) throw DimensionError("huang_lemma_check: wrong variable count");
    if (a[i].uses_w() || b[i].uses_w()) throw PreconditionError("huang_lemma_check: inputs must be w-free");
    if (!Field<S>::is_zero(a[i].constant_term()) || !Field<S>::is_zero(b[i].constant_term()))
      throw PreconditionError("huang_lemma_check: a_i(0) and b_i(0) must vanish");
    s += H::from_holo(a[i]) * H::conj_of(b[i]);
  }
  HuangVerdict v;
  v.hypothesis_holds = divide_by_norm_sq(s, tol).has_value();
  v.conclusion_holds = Field<S>::kExact ? s.is_zero() : s.max_abs_coeff() <= tol;
  return v;
}

}  // namespace ballmap
