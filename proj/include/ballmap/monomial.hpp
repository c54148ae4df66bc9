#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <functional>

namespace ballmap {

/// Upper bound on exponent slots per monomial. A HoloPoly over nz variables
/// uses nz + 1 slots; a HermPoly uses 2*nz + 1, so its nz is at most 15.
inline constexpr int kMaxSlots = 32;
inline constexpr int kMaxHoloVars = kMaxSlots - 1;
inline constexpr int kMaxHermVars = (kMaxSlots - 1) / 2;

/// Dense exponent vector. Lexicographic comparison gives every container a
/// deterministic iteration order.
struct Monomial {
  std::array<std::uint8_t, kMaxSlots> e{};

  std::uint8_t operator[](int i) const { return e[static_cast<std::size_t>(i)]; }
  std::uint8_t& operator[](int i) { return e[static_cast<std::size_t>(i)]; }

  // Byte-wise memcmp order is the lexicographic order on exponents.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    return std::memcmp(a.e.data(), b.e.data(), kMaxSlots) <=> 0;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return std::memcmp(a.e.data(), b.e.data(), kMaxSlots) == 0;
  }

  friend Monomial operator+(Monomial a, const Monomial& b) {
    for (int i = 0; i < kMaxSlots; ++i) a.e[i] = static_cast<std::uint8_t>(a.e[i] + b.e[i]);
    return a;
  }

  /// True if every exponent of `d` is <= the matching exponent here.
  bool divisible_by(const Monomial& d) const {
    for (int i = 0; i < kMaxSlots; ++i)
      if (d.e[i] > e[i]) return false;
    return true;
  }

  Monomial minus(const Monomial& d) const {
    Monomial r;
    for (int i = 0; i < kMaxSlots; ++i) r.e[i] = static_cast<std::uint8_t>(e[i] - d.e[i]);
    return r;
  }

  int sum(int begin, int end) const {
    int s = 0;
    for (int i = begin; i < end; ++i) s += e[i];
    return s;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t w[kMaxSlots / 8];
    std::memcpy(w, m.e.data(), kMaxSlots);
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::uint64_t x : w) h = (h ^ x) * 0x100000001b3ull + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace ballmap
