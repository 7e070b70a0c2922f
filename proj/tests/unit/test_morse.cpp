#include <doctest.h>

#include <random>

#include "aim/morse.hpp"

using namespace aim;
using namespace aim::morse;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}
const Rational kDelta(34997, 1000);

BigReal big(const char* s) { return BigReal(s); }

}  // namespace

TEST_SUITE("morse") {

TEST_CASE("unit reduction of the lithium parameters") {
  // Independent evaluation with CODATA 2018 constants and the double inputs.
  const auto r = reduce_units(li2_parameters());
  CHECK(abs_value(BigReal(r.delta - big("35.00979724325244178441467683629956816802"))) < big("1e-30"));
  REQUIRE(r.hbar_omega0_cm1.has_value());
  CHECK(abs_value(BigReal(*r.hbar_omega0_cm1 - big("255.3570915559368696725667378060401034528"))) < big("1e-27"));
  CHECK(abs_value(BigReal(r.delta - 35)) < big("0.1"));
}

TEST_CASE("Delta scales as sqrt(De mu) / beta") {
  const MorseParameters p = li2_parameters();
  const BigReal d = reduce_units(p).delta;
  MorseParameters deep = p;
  deep.De_cm1 *= 4;
  MorseParameters heavy = p;
  heavy.mu_amu *= 4;
  MorseParameters narrow = p;
  narrow.beta_per_angstrom *= 2;
  const BigReal tol = big("1e-40");
  CHECK(abs_value(BigReal(reduce_units(deep).delta - 2 * d)) < tol);
  CHECK(abs_value(BigReal(reduce_units(heavy).delta - 2 * d)) < tol);
  CHECK(abs_value(BigReal(reduce_units(narrow).delta - d / 2)) < tol);
}

TEST_CASE("parameter validation") {
  MorseParameters p = li2_parameters();
  p.validate();
  CHECK(p.warnings().empty());
  p.mu_amu = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  CHECK_THROWS_AS(reduce_units(p), std::invalid_argument);
  MorseParameters soft = li2_parameters();
  soft.beta_per_angstrom = 0.2;  // beta xe = 0.62 < ln 2
  CHECK(soft.warnings().size() == 1);
  CHECK_THROWS_AS(ReducedMorse<Rational>(q(3, 8)), DomainError);
  CHECK_THROWS_AS(ReducedMorse<BigReal>(BigReal(0.1)), DomainError);
}

TEST_CASE("AIM problem at Delta = 1") {
  const auto p = build_aim_problem(ReducedMorse<Rational>(q(1)));
  using QPoly = EpsPoly<Rational>;
  using QLaurent = LaurentPoly<Rational>;
  CHECK(p.lambda0() == QLaurent(QLaurent::Terms{{1, QPoly::constant(8)}, {-1, QPoly{-2, -2}}}));
  CHECK(p.s0() == QLaurent::term(0, QPoly{-20, 8}));
  CHECK(p.u_star() == 1);
}

TEST_CASE("energies of the reference table") {
  // Table entries carry 18 significant digits; the AIM column sits within a
  // few units of the 17th digit of the exact rational energies.
  const Rational e0 = epsilon_to_energy(closed_form_epsilon(kDelta, 0), kDelta);
  const Rational e24 = epsilon_to_energy(closed_form_epsilon(kDelta, 24), kDelta);
  CHECK(abs_value(Rational(e0 - parse_rational("-34.4987858673600556"))) < parse_rational("5e-15"));
  CHECK(abs_value(Rational(e24 - parse_rational("-14.7848675315027016"))) < parse_rational("5e-15"));
  CHECK(epsilon_to_energy(q(-1, 2), kDelta) == 0);
}

TEST_CASE("closed-form spectrum") {
  const Rational d = q(15, 2);
  // n = 12: -(60 - 50)^2 / 480
  CHECK(closed_form_spectrum(d, 12) == q(-100, 480));
  CHECK_THROWS_AS(closed_form_spectrum(d, -1), DomainError);
  CHECK_THROWS_AS(closed_form_spectrum(d, bound_state_count(d)), DomainError);
  CHECK(bound_state_count(kDelta) == 70);
  CHECK(bound_state_count(q(1)) == 2);
  CHECK(bound_state_count(q(5, 4)) == 2);  // n < 2 Delta - 1/2 = 2 is strict
  CHECK(bound_state_count(BigReal(34.997)) == 70);
  CHECK_THROWS_AS(bound_state_count(q(3, 8)), DomainError);
}

TEST_CASE("eps form and closed form agree for random Delta") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<long> num(3000, 90000);
  for (int trial = 0; trial < 50; ++trial) {
    const Rational d = q(num(rng), 997);
    for (int n = 0; n <= 5; ++n) {
      const Rational e = epsilon_to_energy(closed_form_epsilon(d, n), d);
      CHECK(e == closed_form_spectrum(d, n));
      const Rational v = Rational(2 * n + 1, 2);
      CHECK(e == -d + v - v * v / (4 * d));
    }
  }
}

TEST_CASE("constant second difference of the levels") {
  for (int n = 0; n + 2 < bound_state_count(kDelta); ++n) {
    const Rational second = closed_form_spectrum(kDelta, n) - 2 * closed_form_spectrum(kDelta, n + 1) +
                            closed_form_spectrum(kDelta, n + 2);
    CHECK(second == -1 / (2 * kDelta));
  }
}

TEST_CASE("harmonic limit") {
  const Rational d(1000000);
  for (int n = 0; n < 5; ++n) {
    const Rational above_bottom = closed_form_spectrum(d, n) + d;
    CHECK(abs_value(Rational(above_bottom - Rational(2 * n + 1, 2))) < q(1, 100000));
  }
}

TEST_CASE("potential") {
  const MorseParameters p = li2_parameters();
  CHECK(std::abs(potential_eval(p.xe_angstrom, p) + p.De_cm1) < 1e-9);
  CHECK(std::abs(potential_eval(200.0, p)) < 1e-30);
  const double ex = std::exp(p.beta_per_angstrom * p.xe_angstrom);
  CHECK(potential_eval(0.0, p) == doctest::Approx(p.De_cm1 * (ex * ex - 2 * ex)).epsilon(1e-14));
  for (double h : {1e-3, 1e-2, 0.5}) {
    CHECK(potential_eval(p.xe_angstrom + h, p) > -p.De_cm1);
    CHECK(potential_eval(p.xe_angstrom - h, p) > -p.De_cm1);
  }
  CHECK_THROWS_AS(potential_eval(-1.0, p), std::invalid_argument);
  const BigReal v = potential_eval(BigReal(p.xe_angstrom), p);
  CHECK(abs_value(BigReal(v + p.De_cm1)) < big("1e-55"));
}

TEST_CASE("energies in wavenumbers") {
  const auto r = reduce_units(li2_parameters());
  const BigReal hw = *r.hbar_omega0_cm1;
  const BigReal de = 8940;
  for (int n : {0, 1, 10, 40}) {
    const BigReal e = energy_to_wavenumbers(closed_form_spectrum(r.delta, n), r);
    const BigReal v = BigReal(2 * n + 1) / 2;
    // Textbook Morse term values with the same hbar omega0.
    const BigReal expected = -de + hw * v - hw * hw * v * v / (4 * de);
    CHECK(abs_value(BigReal(e - expected)) < big("1e-40"));
  }
  const BigReal ground = energy_to_wavenumbers(closed_form_spectrum(r.delta, 0), r);
  CHECK(abs_value(BigReal(ground - big("-8812.777321421471631753114920613"))) < big("1e-25"));
  CHECK(abs_value(BigReal(energy_to_wavenumbers(BigReal(-r.delta), r) + de)) < big("1e-40"));
  CHECK_THROWS_AS(energy_to_wavenumbers(q(1), ReducedMorse<Rational>(kDelta)), UnitUnavailableError);
}

TEST_CASE("exact root denominator") {
  CHECK(exact_root_denominator(kDelta) == 1'000'000);
  CHECK(exact_root_denominator(Rational(1, 10'000'000)) == 20'000'000);
}

}  // TEST_SUITE
