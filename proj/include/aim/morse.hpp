#pragma once

// Morse oscillator V(x) = De (exp(-2 beta (x - xe)) - 2 exp(-beta (x - xe))).
//
// With u = exp(-beta (x - xe) / 2) and Psi = u^(eps + 1/2) exp(-2 Delta u^2) f(u),
// f solves f'' = (8 Delta u - (2 eps + 2)/u) f' + (12 Delta + 8 Delta eps - 32 Delta^2) f,
// where Delta = De / (hbar omega0), omega0 = beta sqrt(2 De / mu), and the
// energy in units of hbar omega0 is -(eps + 1/2)^2 / (16 Delta).

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "aim/aim_engine.hpp"

namespace aim::morse {

/// Spectroscopic units: De in cm^-1, beta in 1/Angstrom, xe in Angstrom, mu in u.
struct MorseParameters {
  double De_cm1 = 0;
  double beta_per_angstrom = 0;
  double xe_angstrom = 0;
  double mu_amu = 0;

  /// Throws std::invalid_argument unless every field is strictly positive.
  void validate() const;
  /// Non-fatal remarks, e.g. V(0) < 0 when beta * xe <= ln 2.
  std::vector<std::string> warnings() const;
};

/// The seven-lithium A-state parameters of the reference table.
MorseParameters li2_parameters();

template <Scalar T>
struct ReducedMorse {
  T delta;
  /// hbar omega0 in cm^-1; absent when Delta was given directly.
  std::optional<BigReal> hbar_omega0_cm1;

  explicit ReducedMorse(T d, std::optional<BigReal> hw = std::nullopt);
};

ReducedMorse<BigReal> reduce_units(const MorseParameters& p);

template <Scalar T>
AimProblem<T> build_aim_problem(const ReducedMorse<T>& r);

/// eps_n = (8 Delta - 4 n - 3) / 2.
template <Scalar T>
T closed_form_epsilon(const T& delta, int n) {
  return T((T(8) * delta - T(4 * n + 3)) / T(2));
}

/// -(eps + 1/2)^2 / (16 Delta).
template <Scalar T>
T epsilon_to_energy(const T& epsilon, const T& delta) {
  const T shifted = epsilon + T(1) / T(2);
  return T(-(shifted * shifted) / (T(16) * delta));
}

/// Number of levels n >= 0 with n < 2 Delta - 1/2. Requires Delta > 3/8.
int bound_state_count(const Rational& delta);
int bound_state_count(const BigReal& delta);

/// -(8 Delta - 2 (2n + 1))^2 / (64 Delta); DomainError outside 0 <= n < bound_state_count.
template <Scalar T>
T closed_form_spectrum(const T& delta, int n) {
  if (n < 0 || n >= bound_state_count(delta)) {
    throw DomainError("level " + std::to_string(n) + " is not a bound state");
  }
  const T a = T(8) * delta - T(2 * (2 * n + 1));
  return T(-(a * a) / (T(64) * delta));
}

/// V(x) in cm^-1 for x in Angstrom.
template <class R>
R potential_eval(const R& x, const MorseParameters& p) {
  using std::exp;
  using boost::multiprecision::exp;
  if (x < 0) throw std::invalid_argument("potential_eval: x must be non-negative");
  const R y = exp(-R(p.beta_per_angstrom) * (x - R(p.xe_angstrom)));
  return R(p.De_cm1) * (y * y - 2 * y);
}

/// E_n = eps * hbar omega0 in cm^-1; UnitUnavailableError without units.
template <Scalar T>
BigReal energy_to_wavenumbers(const T& eps, const ReducedMorse<T>& r) {
  if (!r.hbar_omega0_cm1) throw UnitUnavailableError("hbar*omega0 unknown: Delta was given without De");
  return to_big(eps) * *r.hbar_omega0_cm1;
}

/// Root denominator bound sufficient for exact levels: 2 * den(Delta).
unsigned long exact_root_denominator(const Rational& delta);

extern template struct ReducedMorse<Rational>;
extern template struct ReducedMorse<BigReal>;

}  // namespace aim::morse
