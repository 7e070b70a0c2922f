#include "aim/eigenfunction.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "aim/quadrature.hpp"

namespace aim::wave {
namespace {

using boost::multiprecision::abs;
using boost::multiprecision::exp;
using boost::multiprecision::log;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

bool negligible(const Rational& x, const Rational&) { return sgn(x) == 0; }
bool negligible(const BigReal& x, const BigReal& scale) {
  return abs(x) <= scale * working_epsilon() * BigReal(1e8);
}

const BigReal& quadrature_tolerance() {
  thread_local BigReal tol;
  thread_local unsigned digits = 0;
  if (digits != working_digits()) {
    digits = working_digits();
    tol = BigReal(1) / BigReal(1e12);
  }
  return tol;
}

// Integral of g(u) du over the u-image of the domain.
QuadratureResult integrate_u(const std::function<BigReal(const BigReal&)>& g, const BigReal& beta, const BigReal& xe,
                             Domain domain, const BigReal& rel_tol, const BigReal& abs_tol) {
  // x = 0 maps to u0; the half line is (0, u0].
  const BigReal u0 = exp(beta * xe / 2);
  QuadratureResult inner = integrate(g, BigReal(0), u0, rel_tol, abs_tol);
  if (domain == Domain::half_line) return inner;
  // u in [u0, inf) via u = u0 / t, t in (0, 1].
  auto tail = [&](const BigReal& t) {
    if (t == 0) return BigReal(0);
    return BigReal(g(u0 / t) * u0 / (t * t));
  };
  const QuadratureResult outer = integrate(tail, BigReal(0), BigReal(1), rel_tol, abs_tol);
  return QuadratureResult{inner.value + outer.value, inner.error + outer.error, inner.intervals + outer.intervals};
}

void check_compatible(const Wavefunction& a, const Wavefunction& b) {
  if (a.beta() != b.beta() || a.xe() != b.xe() || a.series().delta != b.series().delta) {
    throw std::invalid_argument("inner_product: wavefunctions belong to different potentials");
  }
}

}  // namespace

template <Scalar T>
SeriesSolution<T> series_solve(const T& epsilon, const T& delta, int n) {
  if (n < 0) throw std::invalid_argument("series_solve: n must be non-negative");
  SeriesSolution<T> out{n, {T(1)}, epsilon, delta};
  const T s = T(T(12) * delta + T(8) * delta * epsilon - T(32) * delta * delta);
  const T scale = T(abs_value(T(12) * delta) + abs_value(T(T(8) * delta * epsilon)) + T(32) * delta * delta);
  for (int m = 0;; m += 2) {
    const T num = T(T(8) * delta * T(m) + s);
    const bool stops = negligible(num, T(scale + abs_value(T(T(8) * delta * T(m)))));
    if (m == 2 * n) {
      if (!stops) {
        throw TerminationError("series does not terminate at degree " + std::to_string(2 * n) +
                               ": eps is not the eigenvalue of level " + std::to_string(n));
      }
      return out;
    }
    if (stops) {
      throw TerminationError("series terminates early at degree " + std::to_string(m) + ": eps belongs to level " +
                             std::to_string(m / 2));
    }
    const T den = T(T(m + 2) * T(T(m) + T(2) * epsilon + T(3)));
    if (is_zero(den)) throw TerminationError("series recurrence is singular at degree " + std::to_string(m + 2));
    out.coefficients.push_back(T(0));
    out.coefficients.push_back(T(out.coefficients[static_cast<std::size_t>(m)] * num / den));
  }
}

template SeriesSolution<Rational> series_solve(const Rational&, const Rational&, int);
template SeriesSolution<BigReal> series_solve(const BigReal&, const BigReal&, int);

template <Scalar T>
SeriesSolution<BigReal> to_big(const SeriesSolution<T>& s) {
  SeriesSolution<BigReal> out{s.n, {}, aim::to_big(s.epsilon), aim::to_big(s.delta)};
  out.coefficients.reserve(s.coefficients.size());
  for (const auto& c : s.coefficients) out.coefficients.push_back(aim::to_big(c));
  return out;
}

template SeriesSolution<BigReal> to_big(const SeriesSolution<Rational>&);
template SeriesSolution<BigReal> to_big(const SeriesSolution<BigReal>&);

Wavefunction::Wavefunction(SeriesSolution<BigReal> series, BigReal beta, BigReal xe, Domain domain)
    : series_(std::move(series)), beta_(std::move(beta)), xe_(std::move(xe)), domain_(domain) {
  if (!(beta_ > 0)) throw std::invalid_argument("beta must be positive");
}

BigReal Wavefunction::polynomial(const BigReal& u) const {
  const BigReal u2 = u * u;
  BigReal acc = 0;
  const auto& c = series_.coefficients;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (i % 2 == 1) continue;
    acc = acc * u2 + c[i];
  }
  return acc;
}

BigReal Wavefunction::at_u(const BigReal& u) const {
  if (u <= 0) return BigReal(0);
  const BigReal& d = series_.delta;
  return norm_ * pow(u, series_.epsilon + BigReal(1) / 2) * exp(-2 * d * u * u) * polynomial(u);
}

BigReal Wavefunction::operator()(const BigReal& x) const { return at_u(exp(-beta_ * (x - xe_) / 2)); }

BigReal Wavefunction::energy() const { return morse::epsilon_to_energy(series_.epsilon, series_.delta); }

namespace {

BigReal overlap(const Wavefunction& a, const Wavefunction& b, Domain domain, const BigReal& rel_tol,
                const BigReal& abs_tol, bool absolute) {
  const BigReal factor = 2 / a.beta();
  auto g = [&](const BigReal& u) {
    if (u <= 0) return BigReal(0);
    BigReal v = a.at_u(u) * b.at_u(u) * factor / u;
    return absolute ? BigReal(abs(v)) : v;
  };
  return integrate_u(g, a.beta(), a.xe(), domain, rel_tol, abs_tol).value;
}

}  // namespace

BigReal inner_product(const Wavefunction& a, const Wavefunction& b, Domain domain) {
  check_compatible(a, b);
  const BigReal& tol = quadrature_tolerance();
  const BigReal scale = overlap(a, b, domain, BigReal(1) / BigReal(1e6), BigReal(0), true);
  return overlap(a, b, domain, tol, tol * scale, false);
}

template <Scalar T>
Wavefunction assemble(const SeriesSolution<T>& series, const BigReal& beta, const BigReal& xe, Domain domain) {
  Wavefunction psi(to_big(series), beta, xe, domain);
  const BigReal norm2 = inner_product(psi, psi, domain);
  if (!(norm2 > 0)) throw QuadratureError("wavefunction has zero norm", 0.0, 0.0);
  psi.set_norm_constant(1 / sqrt(norm2));
  return psi;
}

template <Scalar T>
Wavefunction assemble(const SeriesSolution<T>& series, const morse::MorseParameters& p, Domain domain) {
  return assemble(series, BigReal(p.beta_per_angstrom), BigReal(p.xe_angstrom), domain);
}

template Wavefunction assemble(const SeriesSolution<Rational>&, const BigReal&, const BigReal&, Domain);
template Wavefunction assemble(const SeriesSolution<BigReal>&, const BigReal&, const BigReal&, Domain);
template Wavefunction assemble(const SeriesSolution<Rational>&, const morse::MorseParameters&, Domain);
template Wavefunction assemble(const SeriesSolution<BigReal>&, const morse::MorseParameters&, Domain);

BigReal schrodinger_residual(const Wavefunction& psi, const BigReal& x) {
  static constexpr std::array<int, 5> kNum{-14350, 8064, -1008, 128, -9};  // / 5040
  const BigReal h = BigReal(1) / 1000;
  BigReal second = BigReal(kNum[0]) * psi(x);
  for (int j = 1; j <= 4; ++j) second += BigReal(kNum[static_cast<std::size_t>(j)]) * (psi(x + j * h) + psi(x - j * h));
  second /= BigReal(5040) * h * h;

  const BigReal& d = psi.series().delta;
  const BigReal& beta = psi.beta();
  const BigReal y = exp(-beta * (x - psi.xe()));
  const BigReal v = d * (y * y - 2 * y);
  const BigReal e = psi.energy();
  const BigReal p = psi(x);
  const BigReal r = -second / (4 * d * beta * beta) + v * p - e * p;
  const BigReal scale = std::max(BigReal(abs(e * p)), BigReal(abs(v * p)));
  if (scale == 0) return abs(r);
  return abs(r) / scale;
}

int node_count(const Wavefunction& psi, const BigReal& x_min, const BigReal& x_max, int points) {
  if (points < 2) throw std::invalid_argument("node_count needs at least two grid points");
  int changes = 0;
  int last = 0;
  for (int i = 0; i < points; ++i) {
    const BigReal x = x_min + (x_max - x_min) * i / (points - 1);
    const int s = sign(psi(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

void write_table(std::ostream& os, const Wavefunction& psi, const BigReal& x_min, const BigReal& x_max, int points) {
  if (points < 2) throw std::invalid_argument("write_table needs at least two grid points");
  for (int i = 0; i < points; ++i) {
    const BigReal x = x_min + (x_max - x_min) * i / (points - 1);
    os << format_fixed(x, 12) << ' ' << format_sci(psi(x), 17) << '\n';
  }
}

}  // namespace aim::wave
