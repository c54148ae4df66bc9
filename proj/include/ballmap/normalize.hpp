#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ballmap/jet.hpp"

namespace ballmap {

enum class Mode { Exact, Float };

inline const char* mode_name(Mode m) { return m == Mode::Exact ? "exact" : "float"; }

namespace detail {

template <class S>
S real_part(const S& x) {
  return (x + Field<S>::conj(x)) * (S(1) / S(2));
}

template <class S>
bool positive_real(const S& x, double tol) {
  if constexpr (Field<S>::kExact) {
    return x.is_real() && sgn(x.re()) > 0;
  } else {
    return std::abs(x.imag()) <= tol * std::max(1.0, std::abs(x)) && x.real() > tol;
  }
}

template <class S>
S sqrt_or_throw(const S& x, const char* what) {
  auto r = Field<S>::sqrt_real(x);
  if (!r) throw ExactUnsolvable(std::string("square root of ") + what + " is not Gaussian-rational");
  return *r;
}

/// Unitary completion. Float mode uses QR; exact mode only completes columns
/// that are unimodular multiples of distinct standard basis vectors.
template <class S>
Matrix<S> unitary_completion(const Matrix<S>& cols) {
  if constexpr (!Field<S>::kExact) {
    return complete_unitary(cols);
  } else {
    const int k = cols.rows(), m = cols.cols();
    Matrix<S> u(k, k);
    std::vector<bool> used(static_cast<std::size_t>(k), false);
    for (int c = 0; c < m; ++c) {
      int row = -1;
      for (int r = 0; r < k; ++r) {
        if (cols(r, c).is_zero()) continue;
        if (row >= 0) throw ExactUnsolvable("unitary completion of a non-monomial column");
        row = r;
      }
      if (row < 0 || used[row] || cols(row, c).norm_sq() != 1)
        throw ExactUnsolvable("unitary completion needs unimodular basis columns");
      used[row] = true;
      u(row, c) = cols(row, c);
    }
    int c = m;
    for (int r = 0; r < k; ++r)
      if (!used[r]) u(r, c++) = S(1);
    return u;
  }
}

/// Eigen-decomposition sorted by descending eigenvalue. Exact mode accepts
/// only already diagonal matrices.
template <class S>
std::pair<std::vector<S>, Matrix<S>> sorted_eigen(const Matrix<S>& a) {
  const int m = a.rows();
  if constexpr (!Field<S>::kExact) {
    auto e = hermitian_eigen(a);
    std::vector<S> vals;
    for (double v : e.values) vals.emplace_back(v, 0.0);
    return {vals, e.vectors};
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (i != j && !a(i, j).is_zero()) throw ExactUnsolvable("matrix A is not diagonal in exact mode");
    std::vector<int> order(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) order[i] = i;
    for (int i = 0; i < m; ++i)
      if (!a(i, i).is_real()) throw PreconditionError("matrix A has a non-real diagonal entry");
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x).re() > a(y, y).re(); });
    std::vector<S> vals;
    Matrix<S> v(m, m);
    for (int k = 0; k < m; ++k) {
      vals.push_back(a(order[k], order[k]));
      v(order[k], k) = S(1);
    }
    return {vals, v};
  }
}

template <class S>
std::vector<S> zeros(int k) {
  return std::vector<S>(static_cast<std::size_t>(k), S(0));
}

}  // namespace detail

/// Linear data of a jet: M (nz x (N-1)) z-coefficients of f~, b the
/// w-coefficients of f~, λ the w-coefficient of g.
template <class S>
struct LinearPart {
  Matrix<S> M;
  std::vector<S> b;
  S lambda;
};

template <class S>
LinearPart<S> linear_part(const MapJet<S>& j) {
  const int nz = j.nz();
  LinearPart<S> lp{Matrix<S>(nz, j.N - 1), {}, S(0)};
  for (int k = 0; k + 1 < j.N; ++k) {
    for (int r = 0; r < nz; ++r) lp.M(r, k) = j.comps[k].coeff(slot_monomial({r}));
    lp.b.push_back(j.comps[k].coeff(slot_monomial({nz})));
  }
  lp.lambda = j.g().coeff(slot_monomial({nz}));
  return lp;
}

/// A_{jl} = -2i * coeff(f_l, z_j w), an nz x nz matrix.
template <class S>
Matrix<S> matrix_A(const MapJet<S>& j) {
  const int nz = j.nz();
  const S c = S(0) - S(2) * Field<S>::imag_unit();
  Matrix<S> a(nz, nz);
  for (int r = 0; r < nz; ++r)
    for (int l = 0; l < nz; ++l) a(r, l) = c * j.comps[l].coeff(slot_monomial({r, nz}));
  return a;
}

template <class S>
struct Lemma21Normalization {
  MapJet<S> jet;                     // normalized: f = z + (i/2) a(z) w + .., φ = φ2 + .., g = w + ..
  S lambda;                          // g_w of F_p before scaling
  Matrix<S> A;                       // matrix_A of the normalized jet
  std::vector<HoloPoly<S>> a1;       // a^{(1)}_l(z) = Σ_j A_{jl} z_j
  std::vector<HoloPoly<S>> phi2;     // φ^{(2,0)} components
  HermPoly<S> compat_residual;       // Σ z̄_l a_l(z) |z|^2 - |φ^{(2)}(z)|^2
  std::vector<RationalMap<S>> tau_chain;  // target isotropies applied, in order
};

/// Target-side normalization of a jet with F(0) = 0.
template <class S>
Lemma21Normalization<S> normalize_lemma21_jet(MapJet<S> j) {
  const int nz = j.nz();
  const int N = j.N;
  // g_{w^2} has weight 4 and fixes the anti-Hermitian part of A.
  if (j.order < 4) throw PreconditionError("Lemma 2.1 normalization needs a jet of weighted order >= 4");
  Lemma21Normalization<S> out;
  auto lp = linear_part(j);
  const double tol = 1e-9;
  if (!detail::positive_real(lp.lambda, tol))
    throw PreconditionError("g_w(0) is not positive: F is not CR-transversal at the base point");
  out.lambda = lp.lambda;
  const S s = detail::sqrt_or_throw(lp.lambda, "g_w");
  const S inv_s = S(1) / s;
  Matrix<S> cols(N - 1, nz);
  for (int r = 0; r < nz; ++r)
    for (int k = 0; k < N - 1; ++k) cols(k, r) = Field<S>::conj(lp.M(r, k)) * inv_s;
  Matrix<S> u = detail::unitary_completion(cols);
  auto t1 = make_isotropy<S>(N, inv_s, S(0), detail::zeros<S>(N - 1), u);
  j = apply_target(t1, j);
  out.tau_chain.push_back(t1);

  lp = linear_part(j);
  std::vector<S> a;
  for (const auto& x : lp.b) a.push_back(S(0) - x);
  auto t2 = make_isotropy<S>(N, S(1), S(0), a, Matrix<S>::identity(N - 1));
  j = apply_target(t2, j);
  out.tau_chain.push_back(t2);

  const S g2 = j.g().coeff(slot_monomial({nz, nz}));
  auto t3 = make_isotropy<S>(N, S(1), S(0) - detail::real_part(g2), detail::zeros<S>(N - 1),
                             Matrix<S>::identity(N - 1));
  j = apply_target(t3, j);
  out.tau_chain.push_back(t3);

  out.A = matrix_A(j);
  HermPoly<S> lhs(nz);
  for (int l = 0; l < nz; ++l) {
    HoloPoly<S> al(nz);
    for (int r = 0; r < nz; ++r) al += HoloPoly<S>::z(nz, r, out.A(r, l));
    lhs += HermPoly<S>::zbar(nz, l) * HermPoly<S>::from_holo(al);
    out.a1.push_back(std::move(al));
  }
  lhs = lhs * HermPoly<S>::norm_sq(nz);
  HermPoly<S> rhs(nz);
  for (int k = nz; k + 1 < N; ++k) {
    HoloPoly<S> p = j.block(k, 2, 0);
    rhs += HermPoly<S>::from_holo(p) * HermPoly<S>::conj_of(p);
    out.phi2.push_back(std::move(p));
  }
  out.compat_residual = lhs - rhs;
  out.jet = std::move(j);
  return out;
}

/// Lemma 2.1 normalization of F at a boundary point p (exact or float scalar).
template <class S>
Lemma21Normalization<S> normalize_lemma21(const RationalMap<S>& f, const BoundaryPoint<S>& p, int order = 4) {
  return normalize_lemma21_jet(jet_at(f, p, order));
}

/// Index sets of Theorem 2.1 for given κ0 and nz = n - 1 (0-based pairs).
std::vector<std::pair<int, int>> index_set_S0(int kappa, int nz);

/// Exact geometric rank at p without square roots. After Lemma 2.1 the
/// coefficient vectors of φ^{(2,0)} span a space of dimension #S0(κ0); that
/// space is the image of f~^{(2,0)}(F_p) modulo the row space of M.
int geometric_rank_exact(const MapQ& f, const BoundaryPoint<GaussianRational>& p);

/// Float geometric rank at p: positive eigenvalues of A after Lemma 2.1,
/// counted against rel_tol * max(1, largest eigenvalue).
int geometric_rank_float(const MapF& f, const BoundaryPoint<Complex>& p, double rel_tol = 1e-7);

struct RankSample {
  BoundaryPoint<GaussianRational> point;
  int rank = 0;
  Mode mode = Mode::Exact;
};

struct RankReport {
  int rank = 0;                     // max over the sample
  bool constant = true;             // same rank at every sample point
  std::vector<RankSample> samples;
};

/// Max of geometric_rank_at over `points` seeded boundary points. Exact mode
/// uses the square-root-free route; float mode the eigenvalue route.
RankReport geometric_rank(const MapQ& f_siegel, int points = 25, std::uint64_t seed = 2024, Mode mode = Mode::Exact);

/// Geometric rank at one point in the requested mode.
int geometric_rank_at(const MapQ& f_siegel, const BoundaryPoint<GaussianRational>& p, Mode mode);

}  // namespace ballmap
