#include "aim/morse.hpp"

#include <algorithm>
#include <stdexcept>

#include "aim/constants.hpp"

#include <mpfr.h>

namespace aim::morse {

void MorseParameters::validate() const {
  if (!(De_cm1 > 0 && beta_per_angstrom > 0 && xe_angstrom > 0 && mu_amu > 0)) {
    throw std::invalid_argument("Morse parameters De, beta, xe, mu must all be positive");
  }
}

std::vector<std::string> MorseParameters::warnings() const {
  std::vector<std::string> out;
  if (beta_per_angstrom * xe_angstrom <= std::log(2.0)) {
    out.emplace_back("beta*xe <= ln 2: V(0) is not positive, the inner wall is too soft at x = 0");
  }
  return out;
}

MorseParameters li2_parameters() { return MorseParameters{8940.0, 0.616, 3.10821, 3.5080}; }

template <Scalar T>
ReducedMorse<T>::ReducedMorse(T d, std::optional<BigReal> hw) : delta(std::move(d)), hbar_omega0_cm1(std::move(hw)) {
  if (!(delta > T(3) / T(8))) throw DomainError("Delta must exceed 3/8 for a bound state to exist");
}

template struct ReducedMorse<Rational>;
template struct ReducedMorse<BigReal>;

ReducedMorse<BigReal> reduce_units(const MorseParameters& p) {
  p.validate();
  using boost::multiprecision::sqrt;
  const BigReal h = to_big(parse_rational(constants::kPlanck));
  const BigReal c = to_big(parse_rational(constants::kSpeedOfLight));
  const BigReal amu = to_big(parse_rational(constants::kAtomicMassUnit));
  const BigReal angstrom = to_big(parse_rational(constants::kAngstrom));
  BigReal pi;
  mpfr_const_pi(pi.backend().data(), MPFR_RNDN);
  const BigReal hbar = h / (2 * pi);

  // cm^-1 -> J is h * c * 100.
  const BigReal de_joule = BigReal(p.De_cm1) * h * c * 100;
  const BigReal beta = BigReal(p.beta_per_angstrom) / angstrom;
  const BigReal mu = BigReal(p.mu_amu) * amu;

  const BigReal delta = sqrt(mu * de_joule / 2) / (hbar * beta);
  return ReducedMorse<BigReal>(delta, BigReal(BigReal(p.De_cm1) / delta));
}

template <Scalar T>
AimProblem<T> build_aim_problem(const ReducedMorse<T>& r) {
  const T& d = r.delta;
  using Terms = typename LaurentPoly<T>::Terms;
  // lambda0 = 8 Delta u - (2 eps + 2) / u
  LaurentPoly<T> lambda0(Terms{{1, EpsPoly<T>::constant(T(8) * d)}, {-1, EpsPoly<T>{T(-2), T(-2)}}});
  // s0 = (12 Delta - 32 Delta^2) + 8 Delta eps
  LaurentPoly<T> s0(Terms{{0, EpsPoly<T>{T(T(12) * d - T(32) * d * d), T(T(8) * d)}}});
  return AimProblem<T>(std::move(lambda0), std::move(s0), T(1), "morse", LevelOrder::descending);
}

template AimProblem<Rational> build_aim_problem(const ReducedMorse<Rational>&);
template AimProblem<BigReal> build_aim_problem(const ReducedMorse<BigReal>&);

int bound_state_count(const Rational& delta) {
  if (!(delta > Rational(3, 8))) throw DomainError("Delta must exceed 3/8");
  const Rational x = 2 * delta - Rational(1, 2);
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return static_cast<int>(c.get_si());
}

int bound_state_count(const BigReal& delta) {
  if (!(delta > BigReal(3) / 8)) throw DomainError("Delta must exceed 3/8");
  const BigReal x = 2 * delta - BigReal(1) / 2;
  return boost::multiprecision::ceil(x).convert_to<int>();
}

unsigned long exact_root_denominator(const Rational& delta) {
  const Integer d = 2 * delta.get_den();
  constexpr unsigned long kDefault = 1'000'000;
  if (!d.fits_ulong_p()) throw DomainError("Delta denominator too large for exact root detection");
  return std::max(kDefault, d.get_ui());
}

}  // namespace aim::morse
