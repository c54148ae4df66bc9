#include "ballmap/linalg.hpp"

#include <Eigen/Dense>
#include <numeric>

namespace ballmap {

namespace {

struct GaussInt {
  mpz_class re, im;
  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

GaussInt mul(const GaussInt& a, const GaussInt& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

GaussInt sub(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }

// Exact quotient; the caller guarantees d divides a.
GaussInt div_exact(const GaussInt& a, const GaussInt& d) {
  const mpz_class n = d.re * d.re + d.im * d.im;
  GaussInt t = mul(a, {d.re, -d.im});
  mpz_divexact(t.re.get_mpz_t(), t.re.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(t.im.get_mpz_t(), t.im.get_mpz_t(), n.get_mpz_t());
  return t;
}

}  // namespace

int rank(const Matrix<GaussianRational>& m, double) {
  const int rows = m.rows(), cols = m.cols();
  std::vector<std::vector<GaussInt>> a(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) {
    mpz_class l = 1;
    for (int c = 0; c < cols; ++c) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).re().get_den_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).im().get_den_mpz_t());
    }
    for (int c = 0; c < cols; ++c) {
      const mpq_class x = m(r, c).re() * l, y = m(r, c).im() * l;
      a[r].push_back({x.get_num(), y.get_num()});
    }
  }
  GaussInt prev{1, 0};
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int piv = -1;
    for (int r = row; r < rows && piv < 0; ++r)
      if (!a[r][col].is_zero()) piv = r;
    if (piv < 0) continue;
    std::swap(a[piv], a[row]);
    for (int r = row + 1; r < rows; ++r) {
      for (int c = col + 1; c < cols; ++c)
        a[r][c] = div_exact(sub(mul(a[row][col], a[r][c]), mul(a[r][col], a[row][c])), prev);
      a[r][col] = {0, 0};
    }
    prev = a[row][col];
    ++row;
  }
  return row;
}

namespace {

Eigen::MatrixXcd to_eigen(const Matrix<Complex>& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  return e;
}

Matrix<Complex> from_eigen(const Eigen::MatrixXcd& e) {
  Matrix<Complex> m(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) m(r, c) = e(r, c);
  return m;
}

}  // namespace

HermitianEigen hermitian_eigen(const Matrix<Complex>& a) {
  if (a.rows() != a.cols()) throw DimensionError("hermitian_eigen: matrix is not square");
  Eigen::MatrixXcd h = to_eigen(a);
  h = (h + h.adjoint()).eval() * 0.5;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  const int n = a.rows();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return vals(x) > vals(y); });
  HermitianEigen out{{}, Matrix<Complex>(n, n)};
  for (int k = 0; k < n; ++k) {
    out.values.push_back(vals(order[k]));
    for (int r = 0; r < n; ++r) out.vectors(r, k) = vecs(r, order[k]);
  }
  return out;
}

Matrix<Complex> complete_unitary(const Matrix<Complex>& cols) {
  const int k = cols.rows();
  const int m = cols.cols();
  Eigen::MatrixXcd a(k, m + k);
  a.leftCols(m) = to_eigen(cols);
  a.rightCols(k) = Eigen::MatrixXcd::Identity(k, k);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(k, k);
  // Q spans the given columns first, up to unit phases; restore them verbatim.
  q.leftCols(m) = a.leftCols(m);
  return from_eigen(q);
}

Matrix<Complex> procrustes_unitary(const Matrix<Complex>& c, const Matrix<Complex>& d) {
  if (c.rows() != d.rows() || c.cols() != d.cols()) throw DimensionError("procrustes_unitary: shape mismatch");
  Eigen::MatrixXcd m = to_eigen(c).adjoint() * to_eigen(d);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return from_eigen(svd.matrixU() * svd.matrixV().adjoint());
}

}  // namespace ballmap
