#include "ballmap/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ballmap/errors.hpp"

namespace ballmap {

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  Rational d = o.norm_sq();
  if (sgn(d) == 0) throw Error("division by zero scalar");
  Rational r = (re_ * o.re_ + im_ * o.im_) / d;
  Rational s = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(r);
  im_ = std::move(s);
  return *this;
}

namespace {

std::string rational_str(const Rational& r) { return r.get_str(); }

}  // namespace

std::string GaussianRational::str() const {
  if (sgn(im_) == 0) return rational_str(re_);
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = rational_str(im_) + "*i";
  }
  if (sgn(re_) == 0) return imag;
  std::string out = rational_str(re_);
  if (imag[0] != '-') out += '+';
  return out + imag;
}

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (sgn(r) < 0) return std::nullopt;
  if (sgn(r) == 0) return Rational(0);
  const mpz_class& num = r.get_num();
  const mpz_class& den = r.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class a, b;
  mpz_sqrt(a.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(b.get_mpz_t(), den.get_mpz_t());
  Rational out(a, b);
  out.canonicalize();
  return out;
}

GaussianRational Field<GaussianRational>::from_complex(const Complex&) {
  throw ExactUnsolvable("floating-point value cannot enter exact arithmetic");
}

std::optional<GaussianRational> Field<GaussianRational>::sqrt_real(const GaussianRational& x) {
  if (!x.is_real()) return std::nullopt;
  auto r = rational_sqrt(x.re());
  if (!r) return std::nullopt;
  return GaussianRational(*r);
}

std::optional<Complex> Field<Complex>::sqrt_real(const Complex& x) {
  if (x.real() < 0) return std::nullopt;
  return Complex(std::sqrt(x.real()), 0.0);
}

namespace {

std::string double_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string Field<Complex>::str(const Complex& x) {
  if (x.imag() == 0.0) return double_str(x.real());
  std::string imag = double_str(x.imag()) + "*i";
  if (x.real() == 0.0) return imag;
  std::string out = double_str(x.real());
  if (imag[0] != '-') out += '+';
  return out + imag;
}

namespace {

// Recursive-descent reader for a scalar expression: sum of [sign] rational [*i] | [sign] i.
class ScalarReader {
 public:
  explicit ScalarReader(std::string_view s) : s_(s) {}

  GaussianRational read_all() {
    skip_ws();
    bool paren = false;
    if (peek() == '(') {
      paren = true;
      ++pos_;
    }
    GaussianRational total;
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        break;
      }
      GaussianRational term = read_term();
      if (sign < 0) term = -term;
      total += term;
      first = false;
      skip_ws();
      if (pos_ >= s_.size() || peek() == ')') break;
    }
    if (paren) {
      if (peek() != ')') throw ParseError("expected ')' in scalar: " + std::string(s_));
      ++pos_;
    }
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("trailing characters in scalar: " + std::string(s_));
    return total;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  GaussianRational read_term() {
    if (peek() == 'i') {
      ++pos_;
      return GaussianRational::i();
    }
    Rational r = read_rational();
    skip_ws();
    if (peek() == '*') {
      ++pos_;
      skip_ws();
      if (peek() != 'i') throw ParseError("expected 'i' after '*' in scalar");
      ++pos_;
      return GaussianRational(Rational(0), r);
    }
    return GaussianRational(r);
  }

  Rational read_rational() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError("expected digits in scalar: " + std::string(s_));
    std::string num(s_.substr(start, pos_ - start));
    std::string den = "1";
    if (peek() == '/') {
      ++pos_;
      std::size_t d0 = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (d0 == pos_) throw ParseError("expected denominator in scalar");
      den = std::string(s_.substr(d0, pos_ - d0));
    }
    mpz_class d(den);
    if (d == 0) throw ParseError("zero denominator in scalar");
    Rational r(mpz_class(num), d);
    r.canonicalize();
    return r;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

GaussianRational parse_gaussian(std::string_view text) { return ScalarReader(text).read_all(); }

}  // namespace ballmap
