#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace ballmap {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Exact scalar a + b*i with a, b rational. Components are kept in
/// canonical (reduced) form so equality is structural.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational i() { return {Rational(0), Rational(1)}; }
  static GaussianRational ratio(long num, long den) { return GaussianRational(Rational(num, den)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  GaussianRational conj() const { return {re_, -im_}; }
  /// |s|^2 = s * conj(s).
  Rational norm_sq() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational s = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(s);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }
  std::string str() const;

 private:
  Rational re_;
  Rational im_;
};

/// Uniform interface over the exact field and binary64 complex numbers, so
/// the algebra can be instantiated in either mode.
template <class S>
struct Field;

template <>
struct Field<GaussianRational> {
  using Scalar = GaussianRational;
  static constexpr bool kExact = true;

  static bool is_zero(const Scalar& x) { return x.is_zero(); }
  static Scalar conj(const Scalar& x) { return x.conj(); }
  static double magnitude(const Scalar& x) { return std::abs(x.to_complex()); }
  static Scalar from_rational(const Rational& r) { return Scalar(r); }
  static Scalar from_gaussian(const GaussianRational& g) { return g; }
  static Scalar from_complex(const Complex&);  // throws: exact mode cannot absorb floats
  static Complex to_complex(const Scalar& x) { return x.to_complex(); }
  static Scalar imag_unit() { return Scalar::i(); }
  /// Square root of a nonnegative real scalar, if it is rational.
  static std::optional<Scalar> sqrt_real(const Scalar& x);
  static std::string str(const Scalar& x) { return x.str(); }
};

template <>
struct Field<Complex> {
  using Scalar = Complex;
  static constexpr bool kExact = false;
  /// Coefficients below this magnitude are dropped from float polynomials.
  static constexpr double kPrune = 1e-14;

  static bool is_zero(const Scalar& x) { return std::abs(x) <= kPrune; }
  static Scalar conj(const Scalar& x) { return std::conj(x); }
  static double magnitude(const Scalar& x) { return std::abs(x); }
  static Scalar from_rational(const Rational& r) { return {r.get_d(), 0.0}; }
  static Scalar from_gaussian(const GaussianRational& g) { return g.to_complex(); }
  static Scalar from_complex(const Complex& c) { return c; }
  static Complex to_complex(const Scalar& x) { return x; }
  static Scalar imag_unit() { return {0.0, 1.0}; }
  static std::optional<Scalar> sqrt_real(const Scalar& x);
  static std::string str(const Scalar& x);
};

/// Parses `a`, `a/b`, `a/b+c/d*i`, `c/d*i`, `i` (optionally parenthesized).
GaussianRational parse_gaussian(std::string_view text);

/// Exact square root of a nonnegative rational, if it is a perfect square.
std::optional<Rational> rational_sqrt(const Rational& r);

}  // namespace ballmap
