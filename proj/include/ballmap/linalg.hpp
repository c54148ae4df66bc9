#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "ballmap/errors.hpp"
#include "ballmap/scalar.hpp"

namespace ballmap {

/// Dense row-major matrix over either scalar field.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols), S(0)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  S& operator()(int r, int c) { return a_[static_cast<std::size_t>(r * cols_ + c)]; }
  const S& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r * cols_ + c)]; }

  Matrix adjoint() const {
    Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t(c, r) = Field<S>::conj((*this)(r, c));
    return t;
  }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw DimensionError("matrix product shape mismatch");
    Matrix p(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const S& v = x(i, k);
        if (Field<S>::is_zero(v)) continue;
        for (int j = 0; j < y.cols_; ++j) p(i, j) += v * y(k, j);
      }
    return p;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<S> a_;
};

template <class S>
struct Echelon {
  Matrix<S> rref;
  std::vector<int> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form. Exact mode pivots on any nonzero entry; float
/// mode uses partial pivoting and treats entries below rel_tol times the
/// largest row norm as zero.
template <class S>
Echelon<S> row_reduce(Matrix<S> m, double rel_tol = 1e-9) {
  using F = Field<S>;
  double scale = 0;
  if constexpr (!F::kExact) {
    for (int r = 0; r < m.rows(); ++r) {
      double s = 0;
      for (int c = 0; c < m.cols(); ++c) s += std::norm(m(r, c));
      scale = std::max(scale, std::sqrt(s));
    }
  }
  auto negligible = [&](const S& v) {
    if constexpr (F::kExact) {
      return v.is_zero();
    } else {
      return std::abs(v) <= rel_tol * scale;
    }
  };
  Echelon<S> out;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    double best = -1;
    for (int r = row; r < m.rows(); ++r) {
      if (negligible(m(r, col))) continue;
      if constexpr (F::kExact) {
        piv = r;
        break;
      } else {
        double mag = std::abs(m(r, col));
        if (mag > best) {
          best = mag;
          piv = r;
        }
      }
    }
    if (piv < 0) continue;
    if (piv != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    const S inv = S(1) / m(row, col);
    for (int c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || F::is_zero(m(r, col))) continue;
      const S f = m(r, col);
      for (int c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rref = std::move(m);
  return out;
}

template <class S>
int rank(const Matrix<S>& m, double rel_tol = 1e-9) {
  return static_cast<int>(row_reduce(m, rel_tol).pivots.size());
}

/// Exact rank by fraction-free (Bareiss) elimination over the Gaussian
/// integers after clearing row denominators. Avoids the coefficient swell of
/// rational elimination on large entries.
int rank(const Matrix<GaussianRational>& m, double rel_tol = 0);

/// Basis of {x : m x = 0}, one vector per free column.
template <class S>
std::vector<std::vector<S>> nullspace(const Matrix<S>& m, double rel_tol = 1e-9) {
  auto e = row_reduce(m, rel_tol);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<S>> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<S> v(static_cast<std::size_t>(m.cols()), S(0));
    v[f] = S(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = S(0) - e.rref(static_cast<int>(r), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// A particular solution of m x = b with free variables set to zero, or
/// nullopt when inconsistent.
template <class S>
std::optional<std::vector<S>> solve(const Matrix<S>& m, const std::vector<S>& b, double rel_tol = 1e-9) {
  if (static_cast<int>(b.size()) != m.rows()) throw DimensionError("solve: right-hand side length");
  Matrix<S> aug(m.rows(), m.cols() + 1);
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  auto e = row_reduce(aug, rel_tol);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  std::vector<S> x(static_cast<std::size_t>(m.cols()), S(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.rref(static_cast<int>(r), m.cols());
  return x;
}

template <class S>
bool is_unitary(const Matrix<S>& u, double tol = 0.0) {
  if (u.rows() != u.cols()) return false;
  auto p = u * u.adjoint();
  for (int i = 0; i < u.rows(); ++i)
    for (int j = 0; j < u.cols(); ++j) {
      S d = p(i, j) - (i == j ? S(1) : S(0));
      if (Field<S>::kExact ? !Field<S>::is_zero(d) : Field<S>::magnitude(d) > tol) return false;
    }
  return true;
}

/// Hermitian eigendecomposition (float), eigenvalues in descending order;
/// columns of `vectors` are the matching orthonormal eigenvectors.
struct HermitianEigen {
  std::vector<double> values;
  Matrix<Complex> vectors;
};
HermitianEigen hermitian_eigen(const Matrix<Complex>& a);

/// Unitary K x K matrix whose first columns are the given orthonormal
/// columns (K x m input).
Matrix<Complex> complete_unitary(const Matrix<Complex>& cols);

/// Unitary U minimizing |C U - D| (orthogonal Procrustes; C, D are r x k).
/// When C C^* = D D^* the minimum is zero.
Matrix<Complex> procrustes_unitary(const Matrix<Complex>& c, const Matrix<Complex>& d);

}  // namespace ballmap
