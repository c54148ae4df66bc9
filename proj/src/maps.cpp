#include "ballmap/maps.hpp"

#include <cmath>
#include <sstream>

namespace ballmap {

namespace {

using Q = GaussianRational;

// rng() % k keeps samples identical across standard-library implementations.
long pick(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Q small_rational(std::mt19937_64& rng, long span, long max_den) {
  return Q(Rational(pick(rng, -span, span), pick(rng, 2, max_den)));
}

// Nonzero numerator: keeps sample points off the coordinate hyperplanes,
// where catalog maps degenerate.
Q small_nonzero_rational(std::mt19937_64& rng, long span, long max_den) {
  long num = pick(rng, 1, span);
  if (pick(rng, 0, 1) == 0) num = -num;
  return Q(Rational(num, pick(rng, 2, max_den)));
}

}  // namespace

std::vector<BoundaryPoint<Q>> sample_boundary_points(int nz, int count, std::uint64_t seed, bool include_origin) {
  std::mt19937_64 rng(seed);
  std::vector<BoundaryPoint<Q>> pts;
  if (include_origin && count > 0) pts.push_back(BoundaryPoint<Q>::from_u(std::vector<Q>(nz, Q(0)), Q(0)));
  while (static_cast<int>(pts.size()) < count) {
    std::vector<Q> z0;
    for (int j = 0; j < nz; ++j) z0.push_back(small_nonzero_rational(rng, 3, 9) + Q::i() * small_nonzero_rational(rng, 3, 9));
    pts.push_back(BoundaryPoint<Q>::from_u(std::move(z0), small_rational(rng, 4, 9)));
  }
  return pts;
}

Matrix<Q> random_exact_unitary(int n, std::mt19937_64& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) perm[k] = k;
  for (int k = n - 1; k > 0; --k) std::swap(perm[k], perm[pick(rng, 0, k)]);
  const Q phases[4] = {Q(1), Q(-1), Q::i(), -Q::i()};
  Matrix<Q> u(n, n);
  for (int k = 0; k < n; ++k) u(k, perm[k]) = phases[pick(rng, 0, 3)];
  if (n >= 2) {
    const Q c(Rational(3, 5)), s(Rational(4, 5));
    const int rotations = static_cast<int>(pick(rng, 1, 3));
    for (int t = 0; t < rotations; ++t) {
      int a = static_cast<int>(pick(rng, 0, n - 1));
      int b = static_cast<int>(pick(rng, 0, n - 2));
      if (b >= a) ++b;
      Matrix<Q> g = Matrix<Q>::identity(n);
      g(a, a) = c;
      g(a, b) = -s;
      g(b, a) = s;
      g(b, b) = c;
      u = u * g;
    }
  }
  return u;
}

MapQ random_ball_automorphism(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int nz = n - 1;
  auto p = sample_boundary_points(nz, 1, rng())[0];
  const Q lambdas[4] = {Q(1), Q(2), Q(Rational(1, 2)), Q(Rational(3, 2))};
  std::vector<Q> a;
  for (int j = 0; j < nz; ++j) a.push_back(small_rational(rng, 2, 5) + Q::i() * small_rational(rng, 2, 5));
  auto iso = make_isotropy<Q>(n, lambdas[pick(rng, 0, 3)], small_rational(rng, 3, 5), a,
                              random_exact_unitary(nz, rng));
  auto siegel = compose(iso, make_sigma_p0(p));
  auto ball = siegel_to_ball_automorphism(siegel);
  auto u1 = unitary_map(random_exact_unitary(n, rng));
  auto u2 = unitary_map(random_exact_unitary(n, rng));
  return compose(u1, compose(ball, u2));
}

double sample_denominator(const MapF& f, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int nz = f.nz();
  double best = INFINITY;
  for (int s = 0; s < count; ++s) {
    std::vector<Complex> z(static_cast<std::size_t>(nz));
    Complex w(0.0, 0.0);
    if (f.model == Model::Ball) {
      double norm = 0;
      for (auto& x : z) {
        x = Complex(gauss(rng), gauss(rng));
        norm += std::norm(x);
      }
      double radius = (s % 2 == 0) ? 1.0 : std::pow(unit(rng), 1.0 / (2.0 * nz));
      for (auto& x : z) x *= radius / std::sqrt(norm);
    } else {
      double norm = 0;
      for (auto& x : z) {
        x = Complex(2 * unit(rng) - 1, 2 * unit(rng) - 1) * 2.0;
        norm += std::norm(x);
      }
      double height = (s % 2 == 0) ? 0.0 : 4.0 * unit(rng);
      w = Complex(8 * unit(rng) - 4, norm + height);
    }
    best = std::min(best, std::abs(f.den.evaluate(z, w)));
  }
  return best;
}

std::string write_map(const MapQ& f) {
  std::ostringstream os;
  os << "model=" << model_name(f.model) << " n=" << f.n << " N=" << f.N << '\n';
  for (const auto& p : f.num) os << p.str() << '\n';
  os << "denominator: " << f.den.str() << '\n';
  return os.str();
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class S>
RationalMap<S> read_map(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw ParseError("empty map file");
  RationalMap<S> f;
  bool have_model = false, have_n = false, have_N = false;
  {
    std::istringstream hs(lines[0]);
    std::string tok;
    while (hs >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) throw ParseError("bad header token '" + tok + "'");
      std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      try {
        if (key == "model") {
          if (val == "ball") {
            f.model = Model::Ball;
          } else if (val == "siegel") {
            f.model = Model::Siegel;
          } else {
            throw ParseError("unknown model '" + val + "'");
          }
          have_model = true;
        } else if (key == "n") {
          f.n = std::stoi(val);
          have_n = true;
        } else if (key == "N") {
          f.N = std::stoi(val);
          have_N = true;
        } else {
          throw ParseError("unknown header key '" + key + "'");
        }
      } catch (const std::invalid_argument&) {
        throw ParseError("bad header value '" + val + "'");
      }
    }
  }
  if (!have_model || !have_n || !have_N) throw ParseError("header needs model=, n= and N=");
  if (f.n < 1 || f.N < 1 || f.n > kMaxHoloVars) throw ParseError("header dimensions out of range");
  const int nz = f.nz();
  bool have_den = false;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const std::string& l = lines[k];
    if (l.rfind("denominator:", 0) == 0) {
      if (have_den) throw ParseError("duplicate denominator line");
      f.den = HoloPoly<S>::parse(l.substr(12), nz);
      have_den = true;
    } else {
      if (have_den) throw ParseError("component after denominator line");
      f.num.push_back(HoloPoly<S>::parse(l, nz));
    }
  }
  if (!have_den) f.den = HoloPoly<S>::constant(nz, S(1));
  f.validate();
  return f;
}

}  // namespace

MapQ read_map_exact(const std::string& text) { return read_map<Q>(text); }
MapF read_map_float(const std::string& text) { return read_map<Complex>(text); }

}  // namespace ballmap
