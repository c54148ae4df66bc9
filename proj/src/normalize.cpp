#include "ballmap/normalize.hpp"

namespace ballmap {

using Q = GaussianRational;

std::vector<std::pair<int, int>> index_set_S0(int kappa, int nz) {
  std::vector<std::pair<int, int>> s;
  for (int j = 0; j < kappa; ++j)
    for (int l = j; l < nz; ++l) s.emplace_back(j, l);
  return s;
}

namespace {

int kappa_from_span(int dim, int nz) {
  for (int k = 0; k <= nz; ++k)
    if (k * nz - k * (k - 1) / 2 == dim) return k;
  throw Error("span dimension " + std::to_string(dim) + " matches no geometric rank");
}

}  // namespace

int geometric_rank_exact(const MapQ& f, const BoundaryPoint<Q>& p) {
  const MapJet<Q> j = jet_at(f, p, 2);
  const int nz = j.nz();
  const int K = j.N - 1;
  const auto lp = linear_part(j);
  if (!detail::positive_real(lp.lambda, 0.0))
    throw PreconditionError("g_w(0) is not positive: F is not CR-transversal at the base point");
  // φ^{(2,0)} coefficient vectors are c_ab U_φ with the columns of U_φ
  // spanning ker M. The map c -> c U_φ kills exactly the row space of M
  // (dimension nz), which also absorbs the weight-2 terms the later
  // isotropies add, so the span has dimension rank [c_ab ; M] - nz.
  const int pairs = nz * (nz + 1) / 2;
  Matrix<Q> m(pairs + nz, K);
  int row = 0;
  for (int a = 0; a < nz; ++a)
    for (int b = a; b < nz; ++b, ++row) {
      const Monomial mono = slot_monomial({a, b});
      for (int k = 0; k < K; ++k) m(row, k) = j.comps[k].coeff(mono);
    }
  for (int r = 0; r < nz; ++r, ++row)
    for (int k = 0; k < K; ++k) m(row, k) = lp.M(r, k);
  return kappa_from_span(rank(m) - nz, nz);
}

int geometric_rank_float(const MapF& f, const BoundaryPoint<Complex>& p, double rel_tol) {
  auto norm = normalize_lemma21(f, p, 4);
  auto eig = hermitian_eigen(norm.A);
  double top = eig.values.empty() ? 0.0 : std::max(1.0, eig.values.front());
  int k = 0;
  for (double v : eig.values)
    if (v > rel_tol * top) ++k;
  return k;
}

int geometric_rank_at(const MapQ& f, const BoundaryPoint<Q>& p, Mode mode) {
  if (mode == Mode::Exact) return geometric_rank_exact(f, p);
  return geometric_rank_float(convert_map<Complex>(f), convert_point<Complex>(p));
}

RankReport geometric_rank(const MapQ& f, int points, std::uint64_t seed, Mode mode) {
  RankReport rep;
  for (const auto& p : sample_boundary_points(f.nz(), points, seed)) {
    int r = geometric_rank_at(f, p, mode);
    if (!rep.samples.empty() && r != rep.samples.front().rank) rep.constant = false;
    rep.rank = std::max(rep.rank, r);
    rep.samples.push_back({p, r, mode});
  }
  return rep;
}

}  // namespace ballmap
