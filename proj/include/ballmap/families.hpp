#pragma once

#include "ballmap/maps.hpp"

namespace ballmap {

/// W(z) = (z', z_n z): B^n -> B^{2n-1}.
MapQ whitney(int n);

/// F_θ = (z', c z_n, s z_n z) with c = cos θ and s = sin θ rational: B^n -> B^{2n}.
MapQ dangelo(int n, const Rational& c = Rational(3, 5));

/// (z_1..z_{n-2}, λ z_{n-1}, z_n, s_λ z_{n-1}(z_1..z_{n-1}, μ z_n, s_μ z_n z)): B^n -> B^{3n}.
MapQ example11(int n, const Rational& lambda = Rational(3, 5), const Rational& mu = Rational(4, 5));

/// (z', z_n z', z_n^2 (s z' , z_n - a) / (1 - a z_n)), s = sqrt(1 - a^2): B^n -> B^{3n-2}.
MapQ fhjz(int n, const Rational& a = Rational(3, 5));

/// z -> (z, 0, .., 0): B^n -> B^N.
MapQ linear_embedding(int n, int N);

/// sqrt(1 - x^2) for rational x in (0, 1); throws ExactUnsolvable when irrational.
Rational rational_complement(const Rational& x);

}  // namespace ballmap
