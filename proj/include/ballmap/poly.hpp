#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "ballmap/errors.hpp"
#include "ballmap/monomial.hpp"
#include "ballmap/scalar.hpp"

namespace ballmap {

template <class S>
using TermMap = std::map<Monomial, S>;

namespace detail {

template <class S>
void accumulate(TermMap<S>& t, const Monomial& m, const S& c) {
  if (Field<S>::is_zero(c)) return;
  auto [it, inserted] = t.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (Field<S>::is_zero(it->second)) t.erase(it);
  }
}

// Product of two term maps; when max_wt >= 0, terms whose weight exceeds it are dropped.
template <class S, class WeightFn>
TermMap<S> multiply(const TermMap<S>& a, const TermMap<S>& b, int max_wt, WeightFn weight) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::pair<int, const std::pair<const Monomial, S>*>> bw;
  bw.reserve(b.size());
  for (const auto& t : b) bw.emplace_back(weight(t.first), &t);
  std::stable_sort(bw.begin(), bw.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::unordered_map<Monomial, S, MonomialHash> acc;
  acc.reserve(a.size() + b.size());
  for (const auto& [ma, ca] : a) {
    const int wa = weight(ma);
    for (const auto& [wb, tb] : bw) {
      if (max_wt >= 0 && wa + wb > max_wt) break;
      auto [it, inserted] = acc.try_emplace(ma + tb->first, ca * tb->second);
      if (!inserted) it->second += ca * tb->second;
    }
  }
  std::vector<std::pair<Monomial, S>> sorted;
  sorted.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!Field<S>::is_zero(c)) sorted.emplace_back(m, std::move(c));
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return TermMap<S>(std::make_move_iterator(sorted.begin()), std::make_move_iterator(sorted.end()));
}

template <class S>
std::string coeff_text(const S& c, bool& negative) {
  using F = Field<S>;
  Complex z = F::to_complex(c);
  negative = false;
  if constexpr (F::kExact) {
    if (c.is_real()) {
      negative = sgn(c.re()) < 0;
      return Rational(abs(c.re())).get_str();
    }
    if (sgn(c.re()) == 0) {
      negative = sgn(c.im()) < 0;
      Rational m = abs(c.im());
      return m == 1 ? std::string("i") : m.get_str() + "*i";
    }
    return "(" + c.str() + ")";
  } else {
    auto num = [](double v) { return F::str(Complex(v, 0.0)); };
    if (z.imag() == 0.0) {
      negative = std::signbit(z.real());
      return num(std::fabs(z.real()));
    }
    if (z.real() == 0.0) {
      negative = std::signbit(z.imag());
      double m = std::fabs(z.imag());
      return m == 1.0 ? std::string("i") : num(m) + "*i";
    }
    return "(" + F::str(z) + ")";
  }
}

template <class S>
bool is_one(const S& c) {
  if constexpr (Field<S>::kExact) {
    return c == S(1);
  } else {
    return c == Complex(1.0, 0.0);
  }
}

// Renders terms in descending (weight, monomial) order.
template <class S, class WeightFn, class VarFn>
std::string render(const TermMap<S>& terms, WeightFn weight, VarFn var_text) {
  if (terms.empty()) return "0";
  std::vector<const std::pair<const Monomial, S>*> order;
  order.reserve(terms.size());
  for (const auto& t : terms) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [&](auto* x, auto* y) {
    int wx = weight(x->first), wy = weight(y->first);
    if (wx != wy) return wx > wy;
    return x->first > y->first;
  });
  std::string out;
  bool first = true;
  for (const auto* t : order) {
    bool neg = false;
    std::string coeff = coeff_text(t->second, neg);
    std::string vars = var_text(t->first);
    std::string body;
    if (vars.empty()) {
      body = coeff;
    } else {
      S absval = neg ? S(0) - t->second : t->second;
      body = is_one(absval) ? vars : coeff + "*" + vars;
    }
    if (first) {
      out += neg ? "-" + body : body;
    } else {
      out += neg ? " - " : " + ";
      out += body;
    }
    first = false;
  }
  return out;
}

// Recursive-descent reader shared by both polynomial kinds. Variables are
// resolved to exponent slots by `slot_of`, which returns -1 for unknown names.
template <class S>
class PolyReader {
 public:
  using SlotFn = std::function<int(std::string_view)>;

  PolyReader(std::string_view s, SlotFn slot_of) : s_(s), slot_of_(std::move(slot_of)) {}

  TermMap<S> read_all() {
    TermMap<S> t = read_sum();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  TermMap<S> read_sum() {
    TermMap<S> total;
    bool first = true;
    while (true) {
      char c = peek();
      int sign = 1;
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      TermMap<S> term = read_product();
      for (const auto& [m, v] : term) accumulate(total, m, sign < 0 ? S(0) - v : v);
      first = false;
    }
    return total;
  }

  TermMap<S> read_product() {
    TermMap<S> acc = read_factor();
    while (peek() == '*') {
      ++pos_;
      TermMap<S> f = read_factor();
      acc = multiply(acc, f, -1, [](const Monomial&) { return 0; });
    }
    return acc;
  }

  TermMap<S> constant(const S& c) {
    TermMap<S> t;
    accumulate(t, Monomial{}, c);
    return t;
  }

  TermMap<S> read_factor() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      TermMap<S> inner = read_sum();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return constant(read_number());
    std::size_t start = pos_;
    if (c == '~') ++pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string_view name = s_.substr(start, pos_ - start);
    if (name.empty()) fail("expected a factor");
    if (name == "i") return constant(Field<S>::imag_unit());
    int slot = slot_of_(name);
    if (slot < 0) fail("unknown variable '" + std::string(name) + "'");
    int power = 1;
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      std::size_t d0 = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (d0 == pos_) fail("expected exponent");
      power = std::stoi(std::string(s_.substr(d0, pos_ - d0)));
      if (power > 255) fail("exponent too large");
    }
    Monomial m;
    m[slot] = static_cast<std::uint8_t>(power);
    TermMap<S> t;
    accumulate(t, m, S(1));
    return t;
  }

  S read_number() {
    std::size_t start = pos_;
    if constexpr (Field<S>::kExact) {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E'))
        fail("decimal literal in exact mode");
      std::size_t end = pos_;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        std::size_t d0 = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (d0 == pos_) fail("expected denominator");
        end = pos_;
      }
      return parse_gaussian(s_.substr(start, end - start));
    } else {
      std::string tail(s_.substr(start));
      char* endp = nullptr;
      double v = std::strtod(tail.c_str(), &endp);
      std::size_t used = static_cast<std::size_t>(endp - tail.c_str());
      if (used == 0) fail("expected number");
      pos_ += used;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        std::string rest(s_.substr(pos_));
        double d = std::strtod(rest.c_str(), &endp);
        std::size_t u2 = static_cast<std::size_t>(endp - rest.c_str());
        if (u2 == 0 || d == 0.0) fail("bad denominator");
        pos_ += u2;
        v /= d;
      }
      return Complex(v, 0.0);
    }
  }

  std::string_view s_;
  SlotFn slot_of_;
  std::size_t pos_ = 0;
};

inline int parse_index(std::string_view digits) {
  if (digits.empty() || digits.size() > 3) return -1;
  for (char ch : digits)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return -1;
  return std::stoi(std::string(digits));
}

inline std::string power_text(const std::string& name, int p) {
  return p == 1 ? name : name + "^" + std::to_string(p);
}

}  // namespace detail

/// Holomorphic polynomial in z_1..z_nz and w. Slot nz holds the w exponent.
/// Ball-model maps use nz = n and never populate the w slot.
template <class S>
class HoloPoly {
 public:
  using Scalar = S;

  HoloPoly() = default;
  explicit HoloPoly(int nz) : nz_(nz) {
    if (nz < 0 || nz > kMaxHoloVars) throw DimensionError("unsupported variable count");
  }
  HoloPoly(int nz, TermMap<S> terms) : HoloPoly(nz) { terms_ = std::move(terms); }

  static HoloPoly constant(int nz, const S& c) {
    HoloPoly p(nz);
    p.add_term(Monomial{}, c);
    return p;
  }
  static HoloPoly z(int nz, int j, const S& c = S(1)) {
    if (j < 0 || j >= nz) throw DimensionError("z index out of range");
    Monomial m;
    m[j] = 1;
    HoloPoly p(nz);
    p.add_term(m, c);
    return p;
  }
  static HoloPoly w(int nz, const S& c = S(1)) {
    Monomial m;
    m[nz] = 1;
    HoloPoly p(nz);
    p.add_term(m, c);
    return p;
  }

  static int weight(const Monomial& m, int nz) { return m.sum(0, nz) + 2 * m[nz]; }
  int weight(const Monomial& m) const { return weight(m, nz_); }

  int nz() const { return nz_; }
  const TermMap<S>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const S& c) { detail::accumulate(terms_, m, c); }
  S coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S(0) : it->second;
  }
  S constant_term() const { return coeff(Monomial{}); }
  bool uses_w() const {
    for (const auto& t : terms_)
      if (t.first[nz_] != 0) return true;
    return false;
  }

  /// Highest weighted degree present; -1 for the zero polynomial.
  int weighted_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, weight(t.first));
    return d;
  }
  /// Lowest weighted degree present; -1 for the zero polynomial.
  int order() const {
    int d = -1;
    for (const auto& t : terms_) {
      int k = weight(t.first);
      if (d < 0 || k < d) d = k;
    }
    return d;
  }
  int total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.first.sum(0, nz_ + 1));
    return d;
  }

  HoloPoly truncated(int max_wt) const {
    HoloPoly r(nz_);
    for (const auto& [m, c] : terms_)
      if (weight(m) <= max_wt) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }
  HoloPoly weighted_part(int d) const {
    HoloPoly r(nz_);
    for (const auto& [m, c] : terms_)
      if (weight(m) == d) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }
  /// H^{(k,l)}: the coefficient of w^l restricted to z-degree k, as a polynomial in z.
  HoloPoly block(int k, int l) const {
    HoloPoly r(nz_);
    for (const auto& [m, c] : terms_) {
      if (m[nz_] != l || m.sum(0, nz_) != k) continue;
      Monomial mz = m;
      mz[nz_] = 0;
      r.terms_.emplace(mz, c);
    }
    return r;
  }

  HoloPoly d_z(int j) const { return derivative(j); }
  HoloPoly d_w() const { return derivative(nz_); }

  S evaluate(const std::vector<S>& zv, const S& wv = S(0)) const {
    if (static_cast<int>(zv.size()) != nz_) throw DimensionError("evaluation point has wrong dimension");
    S total(0);
    for (const auto& [m, c] : terms_) {
      S v = c;
      for (int j = 0; j < nz_; ++j)
        for (int e = 0; e < m[j]; ++e) v *= zv[j];
      for (int e = 0; e < m[nz_]; ++e) v *= wv;
      total += v;
    }
    return total;
  }

  /// Substitutes args[0..nz-1] for z and args[nz] for w (the w entry may be
  /// omitted when w is absent). Result terms above max_wt are dropped when max_wt >= 0.
  HoloPoly substitute(const std::vector<HoloPoly>& args, int max_wt = -1) const {
    return substitute_all(std::vector<HoloPoly>{*this}, args, max_wt).front();
  }

  /// Reinterprets the polynomial over a larger z-space (new variables unused).
  /// The w exponent moves to the new w slot.
  HoloPoly embedded(int new_nz) const {
    if (new_nz < nz_) throw DimensionError("embedded: shrinking variable count");
    HoloPoly r(new_nz);
    for (const auto& [m, c] : terms_) {
      Monomial k;
      for (int j = 0; j < nz_; ++j) k[j] = m[j];
      k[new_nz] = m[nz_];
      r.add_term(k, c);
    }
    return r;
  }

  HoloPoly map_coeffs(const std::function<S(const S&)>& f) const {
    HoloPoly r(nz_);
    for (const auto& [m, c] : terms_) r.add_term(m, f(c));
    return r;
  }

  double max_abs_coeff() const {
    double mx = 0;
    for (const auto& t : terms_) mx = std::max(mx, Field<S>::magnitude(t.second));
    return mx;
  }

  HoloPoly operator-() const { return map_coeffs([](const S& c) { return S(0) - c; }); }
  HoloPoly& operator+=(const HoloPoly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) detail::accumulate(terms_, m, c);
    return *this;
  }
  HoloPoly& operator-=(const HoloPoly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) detail::accumulate(terms_, m, S(0) - c);
    return *this;
  }
  HoloPoly& operator*=(const S& s) {
    if (Field<S>::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    TermMap<S> r;
    for (const auto& [m, c] : terms_) detail::accumulate(r, m, c * s);
    terms_ = std::move(r);
    return *this;
  }
  friend HoloPoly operator+(HoloPoly a, const HoloPoly& b) { return a += b; }
  friend HoloPoly operator-(HoloPoly a, const HoloPoly& b) { return a -= b; }
  friend HoloPoly operator*(HoloPoly a, const S& s) { return a *= s; }
  friend HoloPoly operator*(const S& s, HoloPoly a) { return a *= s; }
  friend HoloPoly operator*(const HoloPoly& a, const HoloPoly& b) { return mul_truncated(a, b, -1); }
  friend bool operator==(const HoloPoly& a, const HoloPoly& b) {
    return a.nz_ == b.nz_ && a.terms_ == b.terms_;
  }

  friend HoloPoly mul_truncated(const HoloPoly& a, const HoloPoly& b, int max_wt) {
    a.check(b);
    const int nz = a.nz_;
    return HoloPoly(nz, detail::multiply(a.terms_, b.terms_, max_wt,
                                         [nz](const Monomial& m) { return weight(m, nz); }));
  }

  std::string str() const {
    const int nz = nz_;
    return detail::render(
        terms_, [nz](const Monomial& m) { return weight(m, nz); },
        [nz](const Monomial& m) {
          std::string v;
          for (int j = 0; j < nz; ++j) {
            if (m[j] == 0) continue;
            if (!v.empty()) v += '*';
            v += detail::power_text("z" + std::to_string(j + 1), m[j]);
          }
          if (m[nz] != 0) {
            if (!v.empty()) v += '*';
            v += detail::power_text("w", m[nz]);
          }
          return v;
        });
  }

  static HoloPoly parse(std::string_view text, int nz) {
    HoloPoly p(nz);
    detail::PolyReader<S> reader(text, [nz](std::string_view name) -> int {
      if (name == "w") return nz;
      if (name.size() >= 2 && name[0] == 'z') {
        int j = detail::parse_index(name.substr(1));
        if (j >= 1 && j <= nz) return j - 1;
      }
      return -1;
    });
    p.terms_ = reader.read_all();
    return p;
  }

 private:
  void check(const HoloPoly& o) const {
    if (o.nz_ != nz_) throw DimensionError("variable-count mismatch");
  }
  HoloPoly derivative(int slot) const {
    HoloPoly r(nz_);
    for (const auto& [m, c] : terms_) {
      if (m[slot] == 0) continue;
      Monomial k = m;
      --k[slot];
      r.add_term(k, c * S(static_cast<long>(m[slot])));
    }
    return r;
  }

  int nz_ = 0;
  TermMap<S> terms_;
};

/// Substitutes the same arguments into several polynomials over one space.
/// Products of argument powers are memoized per monomial and shared, so each
/// distinct monomial costs one truncated product.
template <class S>
std::vector<HoloPoly<S>> substitute_all(const std::vector<HoloPoly<S>>& polys, const std::vector<HoloPoly<S>>& args,
                                        int max_wt = -1) {
  if (args.empty()) throw DimensionError("substitute: no arguments");
  const int onz = args.front().nz();
  for (const auto& a : args)
    if (a.nz() != onz) throw DimensionError("substitute: mixed argument spaces");
  for (const auto& p : polys) {
    if (p.nz() != polys.front().nz()) throw DimensionError("substitute: mixed source spaces");
    if (static_cast<int>(args.size()) < p.nz() + (p.uses_w() ? 1 : 0))
      throw DimensionError("substitute: argument count");
  }
  std::unordered_map<Monomial, HoloPoly<S>, MonomialHash> memo;
  memo.emplace(Monomial{}, HoloPoly<S>::constant(onz, S(1)));
  std::function<const HoloPoly<S>&(const Monomial&)> product = [&](const Monomial& m) -> const HoloPoly<S>& {
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    int s = kMaxSlots - 1;
    while (m[s] == 0) --s;
    Monomial prev = m;
    --prev[s];
    HoloPoly<S> r = mul_truncated(product(prev), args[s], max_wt);
    return memo.emplace(m, std::move(r)).first->second;
  };
  std::vector<HoloPoly<S>> out;
  for (const auto& p : polys) {
    std::unordered_map<Monomial, S, MonomialHash> acc;
    for (const auto& [m, c] : p.terms())
      for (const auto& [k, v] : product(m).terms()) {
        auto [it, inserted] = acc.try_emplace(k, c * v);
        if (!inserted) it->second += c * v;
      }
    std::vector<std::pair<Monomial, S>> sorted;
    sorted.reserve(acc.size());
    for (auto& [k, v] : acc)
      if (!Field<S>::is_zero(v)) sorted.emplace_back(k, std::move(v));
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    out.emplace_back(onz, TermMap<S>(std::make_move_iterator(sorted.begin()), std::make_move_iterator(sorted.end())));
  }
  return out;
}

/// Key of a coefficient class z^α z̄^β u^γ grouped by (|α|, |β|, γ).
struct ClassKey {
  int adeg = 0;
  int bdeg = 0;
  int upow = 0;
  friend auto operator<=>(const ClassKey&, const ClassKey&) = default;
};

/// Polynomial in z, z̄ and the real variable u. Slots: α in [0, nz),
/// β in [nz, 2nz), γ at 2nz.
template <class S>
class HermPoly {
 public:
  using Scalar = S;

  HermPoly() = default;
  explicit HermPoly(int nz) : nz_(nz) {
    if (nz < 0 || nz > kMaxHermVars) throw DimensionError("unsupported variable count");
  }
  HermPoly(int nz, TermMap<S> terms) : HermPoly(nz) { terms_ = std::move(terms); }

  static HermPoly constant(int nz, const S& c) {
    HermPoly p(nz);
    p.add_term(Monomial{}, c);
    return p;
  }
  static HermPoly z(int nz, int j) { return single(nz, j); }
  static HermPoly zbar(int nz, int j) { return single(nz, nz + j); }
  static HermPoly u(int nz) { return single(nz, 2 * nz); }
  /// |z|^2 = Σ z_j z̄_j.
  static HermPoly norm_sq(int nz) {
    HermPoly p(nz);
    for (int j = 0; j < nz; ++j) {
      Monomial m;
      m[j] = 1;
      m[nz + j] = 1;
      p.add_term(m, S(1));
    }
    return p;
  }
  /// A w-free holomorphic polynomial viewed on the boundary.
  static HermPoly from_holo(const HoloPoly<S>& h) {
    if (h.uses_w()) throw PreconditionError("from_holo: polynomial depends on w");
    HermPoly p(h.nz());
    for (const auto& [m, c] : h.terms()) p.terms_.emplace(m, c);
    return p;
  }
  /// conj(h) for w-free h: a polynomial in z̄ only.
  static HermPoly conj_of(const HoloPoly<S>& h) { return from_holo(h).conj(); }

  static int weight(const Monomial& m, int nz) { return m.sum(0, 2 * nz) + 2 * m[2 * nz]; }
  int weight(const Monomial& m) const { return weight(m, nz_); }
  ClassKey class_of(const Monomial& m) const {
    return {m.sum(0, nz_), m.sum(nz_, 2 * nz_), m[2 * nz_]};
  }

  int nz() const { return nz_; }
  const TermMap<S>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  void add_term(const Monomial& m, const S& c) { detail::accumulate(terms_, m, c); }
  S coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S(0) : it->second;
  }

  int weighted_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, weight(t.first));
    return d;
  }
  HermPoly weighted_part(int d) const {
    HermPoly r(nz_);
    for (const auto& [m, c] : terms_)
      if (weight(m) == d) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }

  /// Swaps α and β and conjugates coefficients.
  HermPoly conj() const {
    HermPoly r(nz_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(swapped(m), Field<S>::conj(c));
    return r;
  }
  /// coeff(α,β,γ) = conj(coeff(β,α,γ)) for every key.
  bool is_real_valued(double tol = 0.0) const {
    for (const auto& [m, c] : terms_) {
      S d = c - Field<S>::conj(coeff(swapped(m)));
      if (Field<S>::kExact ? !Field<S>::is_zero(d) : Field<S>::magnitude(d) > tol) return false;
    }
    return true;
  }

  HermPoly extract_class(int adeg, int bdeg, int upow) const {
    HermPoly r(nz_);
    const ClassKey want{adeg, bdeg, upow};
    for (const auto& [m, c] : terms_)
      if (class_of(m) == want) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }
  /// Partition of the terms by (|α|, |β|, γ).
  std::map<ClassKey, HermPoly> classes() const {
    std::map<ClassKey, HermPoly> out;
    for (const auto& [m, c] : terms_) {
      auto [it, ins] = out.try_emplace(class_of(m), nz_);
      it->second.terms_.emplace(m, c);
    }
    return out;
  }
  /// Coefficient of u^γ as a polynomial in z, z̄.
  HermPoly u_slice(int upow) const {
    HermPoly r(nz_);
    for (const auto& [m, c] : terms_) {
      if (m[2 * nz_] != upow) continue;
      Monomial k = m;
      k[2 * nz_] = 0;
      r.terms_.emplace(k, c);
    }
    return r;
  }
  int max_u_power() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max<int>(d, t.first[2 * nz_]);
    return d;
  }

  /// Value at z (z̄ taken as the conjugate) and real u.
  S evaluate(const std::vector<S>& zv, const S& uv = S(0)) const {
    if (static_cast<int>(zv.size()) != nz_) throw DimensionError("evaluation point has wrong dimension");
    std::vector<S> zb;
    zb.reserve(zv.size());
    for (const auto& x : zv) zb.push_back(Field<S>::conj(x));
    S total(0);
    for (const auto& [m, c] : terms_) {
      S v = c;
      for (int j = 0; j < nz_; ++j) {
        for (int e = 0; e < m[j]; ++e) v *= zv[j];
        for (int e = 0; e < m[nz_ + j]; ++e) v *= zb[j];
      }
      for (int e = 0; e < m[2 * nz_]; ++e) v *= uv;
      total += v;
    }
    return total;
  }

  HermPoly map_coeffs(const std::function<S(const S&)>& f) const {
    HermPoly r(nz_);
    for (const auto& [m, c] : terms_) r.add_term(m, f(c));
    return r;
  }
  double max_abs_coeff() const {
    double mx = 0;
    for (const auto& t : terms_) mx = std::max(mx, Field<S>::magnitude(t.second));
    return mx;
  }
  /// Drops coefficients with magnitude <= tol (float cleanup).
  HermPoly chopped(double tol) const {
    HermPoly r(nz_);
    for (const auto& [m, c] : terms_)
      if (Field<S>::magnitude(c) > tol) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }

  HermPoly operator-() const { return map_coeffs([](const S& c) { return S(0) - c; }); }
  HermPoly& operator+=(const HermPoly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) detail::accumulate(terms_, m, c);
    return *this;
  }
  HermPoly& operator-=(const HermPoly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) detail::accumulate(terms_, m, S(0) - c);
    return *this;
  }
  HermPoly& operator*=(const S& s) {
    TermMap<S> r;
    for (const auto& [m, c] : terms_) detail::accumulate(r, m, c * s);
    terms_ = std::move(r);
    return *this;
  }
  friend HermPoly operator+(HermPoly a, const HermPoly& b) { return a += b; }
  friend HermPoly operator-(HermPoly a, const HermPoly& b) { return a -= b; }
  friend HermPoly operator*(HermPoly a, const S& s) { return a *= s; }
  friend HermPoly operator*(const S& s, HermPoly a) { return a *= s; }
  friend HermPoly operator*(const HermPoly& a, const HermPoly& b) { return mul_truncated(a, b, -1); }
  friend bool operator==(const HermPoly& a, const HermPoly& b) {
    return a.nz_ == b.nz_ && a.terms_ == b.terms_;
  }
  friend HermPoly mul_truncated(const HermPoly& a, const HermPoly& b, int max_wt) {
    a.check(b);
    const int nz = a.nz_;
    return HermPoly(nz, detail::multiply(a.terms_, b.terms_, max_wt,
                                         [nz](const Monomial& m) { return weight(m, nz); }));
  }

  std::string str() const {
    const int nz = nz_;
    return detail::render(
        terms_, [nz](const Monomial& m) { return weight(m, nz); },
        [nz](const Monomial& m) {
          std::string v;
          auto put = [&v](const std::string& t) {
            if (!v.empty()) v += '*';
            v += t;
          };
          for (int j = 0; j < nz; ++j)
            if (m[j]) put(detail::power_text("z" + std::to_string(j + 1), m[j]));
          for (int j = 0; j < nz; ++j)
            if (m[nz + j]) put(detail::power_text("~z" + std::to_string(j + 1), m[nz + j]));
          if (m[2 * nz]) put(detail::power_text("u", m[2 * nz]));
          return v;
        });
  }

  static HermPoly parse(std::string_view text, int nz) {
    HermPoly p(nz);
    detail::PolyReader<S> reader(text, [nz](std::string_view name) -> int {
      if (name == "u") return 2 * nz;
      bool bar = !name.empty() && name[0] == '~';
      std::string_view rest = bar ? name.substr(1) : name;
      if (rest.size() >= 2 && rest[0] == 'z') {
        int j = detail::parse_index(rest.substr(1));
        if (j >= 1 && j <= nz) return (bar ? nz : 0) + j - 1;
      }
      return -1;
    });
    p.terms_ = reader.read_all();
    return p;
  }

 private:
  static HermPoly single(int nz, int slot) {
    Monomial m;
    m[slot] = 1;
    HermPoly p(nz);
    p.add_term(m, S(1));
    return p;
  }
  Monomial swapped(const Monomial& m) const {
    Monomial k = m;
    for (int j = 0; j < nz_; ++j) std::swap(k[j], k[nz_ + j]);
    return k;
  }
  void check(const HermPoly& o) const {
    if (o.nz_ != nz_) throw DimensionError("variable-count mismatch");
  }

  int nz_ = 0;
  TermMap<S> terms_;
};

/// Block (k, l) of a weighted decomposition: h = Σ H^{(k,l)}(z) w^l.
template <class S>
struct WeightedBlock {
  int k = 0;
  int l = 0;
  HoloPoly<S> poly;
};

/// Blocks grouped by weighted degree k + 2l, ordered by (k, l) within a degree.
template <class S>
std::map<int, std::vector<WeightedBlock<S>>> weighted_decompose(const HoloPoly<S>& h) {
  std::map<std::pair<int, int>, HoloPoly<S>> blocks;
  const int nz = h.nz();
  for (const auto& [m, c] : h.terms()) {
    int k = m.sum(0, nz);
    int l = m[nz];
    Monomial mz = m;
    mz[nz] = 0;
    auto [it, ins] = blocks.try_emplace({k, l}, nz);
    it->second.add_term(mz, c);
  }
  std::map<int, std::vector<WeightedBlock<S>>> out;
  for (auto& [kl, p] : blocks) out[kl.first + 2 * kl.second].push_back({kl.first, kl.second, std::move(p)});
  return out;
}

/// h(z, u + i|z|^2) as a polynomial in (z, z̄, u).
template <class S>
HermPoly<S> restrict_to_boundary(const HoloPoly<S>& h) {
  const int nz = h.nz();
  HermPoly<S> wb = HermPoly<S>::u(nz) + HermPoly<S>::norm_sq(nz) * Field<S>::imag_unit();
  std::vector<HermPoly<S>> wpow{HermPoly<S>::constant(nz, S(1))};
  HermPoly<S> out(nz);
  std::map<int, HermPoly<S>> by_l;
  for (const auto& [m, c] : h.terms()) {
    Monomial mz = m;
    int l = m[nz];
    mz[nz] = 0;
    auto [it, ins] = by_l.try_emplace(l, nz);
    it->second.add_term(mz, c);
  }
  for (const auto& [l, zpart] : by_l) {
    while (static_cast<int>(wpow.size()) <= l) wpow.push_back(wpow.back() * wb);
    out += zpart * wpow[l];
  }
  return out;
}

/// Promotes a HoloPoly in z̄-free form; conj(h) requires h to be w-free.
template <class S>
HermPoly<S> conj(const HoloPoly<S>& h) {
  return HermPoly<S>::conj_of(h);
}

/// Converts coefficients between scalar fields (exact to float always works;
/// float to exact throws ExactUnsolvable).
template <class T, class S>
HoloPoly<T> convert(const HoloPoly<S>& p) {
  if constexpr (std::is_same_v<T, S>) {
    return p;
  } else {
    HoloPoly<T> r(p.nz());
    for (const auto& [m, c] : p.terms()) r.add_term(m, Field<T>::from_complex(Field<S>::to_complex(c)));
    return r;
  }
}
template <class T, class S>
HermPoly<T> convert(const HermPoly<S>& p) {
  if constexpr (std::is_same_v<T, S>) {
    return p;
  } else {
    HermPoly<T> r(p.nz());
    for (const auto& [m, c] : p.terms()) r.add_term(m, Field<T>::from_complex(Field<S>::to_complex(c)));
    return r;
  }
}

using HoloQ = HoloPoly<GaussianRational>;
using HermQ = HermPoly<GaussianRational>;
using HoloF = HoloPoly<Complex>;
using HermF = HermPoly<Complex>;

}  // namespace ballmap
