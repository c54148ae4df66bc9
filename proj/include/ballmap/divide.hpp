#pragma once

#include <optional>

#include "ballmap/poly.hpp"

namespace ballmap {

namespace detail {

// Graded order on full exponent vectors: total degree first, then lexicographic.
inline bool graded_less(const Monomial& a, const Monomial& b) {
  int da = a.sum(0, kMaxSlots), db = b.sum(0, kMaxSlots);
  if (da != db) return da < db;
  return a < b;
}

template <class S>
const std::pair<const Monomial, S>& leading_term(const TermMap<S>& t) {
  auto best = t.begin();
  for (auto it = t.begin(); it != t.end(); ++it)
    if (graded_less(best->first, it->first)) best = it;
  return *best;
}

}  // namespace detail

template <class S>
struct DivisionResult {
  HermPoly<S> quotient;
  HermPoly<S> remainder;
};

/// Multivariate long division of h by a single divisor d under the graded
/// order. The remainder has no term divisible by the leading monomial of d,
/// so it is zero iff d divides h.
template <class S>
DivisionResult<S> long_divide(const HermPoly<S>& h, const HermPoly<S>& d) {
  if (d.is_zero()) throw PreconditionError("division by the zero polynomial");
  if (h.nz() != d.nz()) throw DimensionError("variable-count mismatch");
  const int nz = h.nz();
  const auto& lt = detail::leading_term(d.terms());
  const Monomial lead = lt.first;
  const S lead_c = lt.second;
  DivisionResult<S> out{HermPoly<S>(nz), HermPoly<S>(nz)};
  TermMap<S> p = h.terms();
  while (!p.empty()) {
    // Largest term in graded order; the map is lexicographic so scan once.
    auto top = p.begin();
    for (auto it = p.begin(); it != p.end(); ++it)
      if (detail::graded_less(top->first, it->first)) top = it;
    const Monomial m = top->first;
    const S c = top->second;
    if (!m.divisible_by(lead)) {
      out.remainder.add_term(m, c);
      p.erase(top);
      continue;
    }
    const Monomial qm = m.minus(lead);
    const S qc = c / lead_c;
    out.quotient.add_term(qm, qc);
    for (const auto& [dm, dc] : d.terms()) detail::accumulate(p, qm + dm, S(0) - qc * dc);
    p.erase(m);  // exact cancellation; float rounding may leave a residue here
  }
  return out;
}

/// A with A * |z|^2 = h, or nullopt. `tol` bounds the remainder in float mode.
template <class S>
std::optional<HermPoly<S>> divide_by_norm_sq(const HermPoly<S>& h, double tol = 0.0) {
  if (h.is_zero()) return HermPoly<S>(h.nz());
  auto r = long_divide(h, HermPoly<S>::norm_sq(h.nz()));
  if (Field<S>::kExact ? !r.remainder.is_zero() : r.remainder.max_abs_coeff() > tol) return std::nullopt;
  return r.quotient;
}

/// Q with h = (|z|^2 - 1) * Q, or nullopt. Ball-model variables only (no u).
template <class S>
std::optional<HermPoly<S>> divide_by_sphere(const HermPoly<S>& h, double tol = 0.0) {
  if (h.is_zero()) return HermPoly<S>(h.nz());
  auto sphere = HermPoly<S>::norm_sq(h.nz()) - HermPoly<S>::constant(h.nz(), S(1));
  auto r = long_divide(h, sphere);
  if (Field<S>::kExact ? !r.remainder.is_zero() : r.remainder.max_abs_coeff() > tol) return std::nullopt;
  return r.quotient;
}

}  // namespace ballmap
