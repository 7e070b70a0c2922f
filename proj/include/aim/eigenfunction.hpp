#pragma once

// Morse eigenfunctions from the terminating power series of f_n(u).
//
//   f_n(u) = sum_m c_m u^m,  c_0 = 1,
//   c_{m+2} = c_m (8 Delta m + 12 Delta + 8 Delta eps - 32 Delta^2) / ((m + 2)(m + 2 eps + 3)),
//
// which stops at m = 2n exactly when eps is the n-th eigenvalue. The full
// wavefunction is Psi_n(x) = N u^(eps + 1/2) exp(-2 Delta u^2) f_n(u),
// u = exp(-beta (x - xe) / 2). All evaluation happens at the working BigReal
// precision of the calling thread.

#include <ostream>
#include <vector>

#include "aim/morse.hpp"

namespace aim::wave {

template <Scalar T>
struct SeriesSolution {
  int n = 0;
  /// c_0 .. c_{2n}; odd entries are zero.
  std::vector<T> coefficients;
  T epsilon;
  T delta;
};

template <Scalar T>
SeriesSolution<T> series_solve(const T& epsilon, const T& delta, int n);

/// Whole line (-inf, inf) or the physical half line [0, inf) in x.
enum class Domain { half_line, whole_line };

class Wavefunction {
 public:
  /// Unnormalised Psi(x) (norm_constant = 1) until normalised by assemble().
  Wavefunction(SeriesSolution<BigReal> series, BigReal beta, BigReal xe, Domain domain);

  const SeriesSolution<BigReal>& series() const { return series_; }
  const BigReal& beta() const { return beta_; }
  const BigReal& xe() const { return xe_; }
  Domain domain() const { return domain_; }
  const BigReal& norm_constant() const { return norm_; }

  BigReal operator()(const BigReal& x) const;
  /// N u^(eps+1/2) exp(-2 Delta u^2) f(u) as a function of u.
  BigReal at_u(const BigReal& u) const;
  /// f_n(u).
  BigReal polynomial(const BigReal& u) const;
  /// Energy in units of hbar omega0.
  BigReal energy() const;

  void set_norm_constant(BigReal n) { norm_ = std::move(n); }

 private:
  SeriesSolution<BigReal> series_;
  BigReal beta_;
  BigReal xe_;
  Domain domain_;
  BigReal norm_ = 1;
};

template <Scalar T>
SeriesSolution<BigReal> to_big(const SeriesSolution<T>& s);

/// Normalised wavefunction: the norm constant is fixed by quadrature.
template <Scalar T>
Wavefunction assemble(const SeriesSolution<T>& series, const BigReal& beta, const BigReal& xe,
                      Domain domain = Domain::half_line);
template <Scalar T>
Wavefunction assemble(const SeriesSolution<T>& series, const morse::MorseParameters& p,
                      Domain domain = Domain::half_line);

/// <a|b> over the given domain, relative tolerance 1e-12. Requires matching
/// beta, xe and Delta.
BigReal inner_product(const Wavefunction& a, const Wavefunction& b, Domain domain);
inline BigReal inner_product(const Wavefunction& a, const Wavefunction& b) { return inner_product(a, b, a.domain()); }

/// |(-(1/(4 Delta beta^2)) Psi'' + (V/hbar omega0) Psi - eps_n Psi)(x)| divided
/// by max(|eps_n Psi|, |V Psi|), with Psi'' from an eighth-order central
/// difference.
BigReal schrodinger_residual(const Wavefunction& psi, const BigReal& x);

/// Sign changes of Psi on a uniform grid.
int node_count(const Wavefunction& psi, const BigReal& x_min, const BigReal& x_max, int points = 2000);

/// "x psi" lines on a uniform grid of `points` values.
void write_table(std::ostream& os, const Wavefunction& psi, const BigReal& x_min, const BigReal& x_max, int points);

}  // namespace aim::wave
