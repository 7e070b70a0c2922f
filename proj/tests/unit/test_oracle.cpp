#include <doctest.h>

#include <cmath>
#include <numbers>

#include "aim/oracle.hpp"

using namespace aim;
using namespace aim::oracle;

namespace {

constexpr double kDelta = 34.997;
constexpr double kBeta = 0.616;
constexpr double kXe = 3.10821;

GridSpec grid(int points) { return GridSpec{kXe - 2, kXe + 8, points}; }

double exact_level(int n) {
  const double v = n + 0.5;
  return -kDelta + v - v * v / (4 * kDelta);
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("finite differences against an independent tridiagonal solver") {
  // Reference eigenvalues of the same discretisation from a separate LAPACK front end.
  const auto coarse = fd_spectrum(kDelta, kBeta, kXe, grid(4000), 16);
  const auto fine = fd_spectrum(kDelta, kBeta, kXe, grid(7999), 16);
  REQUIRE(coarse.energies.size() == 16);
  REQUIRE(fine.energies.size() == 16);
  CHECK(coarse.energies[0] == doctest::Approx(-34.49879100809301).epsilon(1e-11));
  CHECK(coarse.energies[1] == doctest::Approx(-33.51309787419733).epsilon(1e-11));
  CHECK(coarse.energies[5] == doctest::Approx(-29.713366525600083).epsilon(1e-11));
  CHECK(coarse.energies[15] == doctest::Approx(-21.214875792110448).epsilon(1e-11));
  CHECK(fine.energies[0] == doctest::Approx(-34.49878715253556).epsilon(1e-11));
  CHECK(fine.energies[15] == doctest::Approx(-21.213632788732767).epsilon(1e-11));
  CHECK_FALSE(coarse.resolution_warning);
}

TEST_CASE("second-order convergence and Richardson extrapolation") {
  const auto coarse = fd_spectrum(kDelta, kBeta, kXe, grid(4000), 16);
  const auto fine = fd_spectrum(kDelta, kBeta, kXe, grid(7999), 16);
  for (int n = 0; n < 16; ++n) {
    const double e = exact_level(n);
    const double err_c = std::abs(coarse.energies[n] - e);
    const double err_f = std::abs(fine.energies[n] - e);
    CHECK(err_c / err_f == doctest::Approx(4.0).epsilon(0.01));
    const double extrapolated = (4 * fine.energies[n] - coarse.energies[n]) / 3;
    CHECK(std::abs(extrapolated - e) * 10 < err_f);
  }
}

TEST_CASE("particle in a box") {
  const auto box = fd_spectrum([](double) { return 0.0; }, 1.0, GridSpec{0, 1, 1000}, 3);
  for (int k = 1; k <= 3; ++k) {
    const double exact = std::pow(k * std::numbers::pi, 2);
    CHECK(std::abs(box.energies[k - 1] - exact) / exact < 1e-3);
  }
  CHECK(box.energies[0] == doctest::Approx(9.86959627).epsilon(1e-8));
  CHECK(box.energies[2] == doctest::Approx(88.82578078).epsilon(1e-8));
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(fd_spectrum(kDelta, kBeta, kXe, grid(99), 1), std::invalid_argument);
  CHECK_THROWS_AS(fd_spectrum(kDelta, kBeta, kXe, GridSpec{5, 4, 1000}, 1), std::invalid_argument);
  CHECK_THROWS_AS(fd_spectrum(kDelta, kBeta, kXe, GridSpec{4, 9, 1000}, 1), std::invalid_argument);
  CHECK_THROWS_AS(fd_spectrum(kDelta, kBeta, kXe, grid(1000), 0), std::invalid_argument);
  CHECK_THROWS_AS(fd_spectrum(kDelta, kBeta, kXe, grid(100), 99), std::invalid_argument);
}

TEST_CASE("resolution warnings") {
  const auto squeezed = fd_spectrum(kDelta, kBeta, kXe, GridSpec{kXe - 0.5, kXe + 1, 1000}, 30);
  CHECK(squeezed.resolution_warning);
  CHECK_FALSE(squeezed.warning.empty());
  const auto coarse = fd_spectrum(kDelta, kBeta, kXe, GridSpec{kXe - 2, kXe + 40, 100}, 40);
  CHECK(coarse.resolution_warning);
}

TEST_CASE("parameters in spectroscopic units") {
  const auto a = fd_spectrum(morse::li2_parameters(), grid(2000), 3);
  const double d = static_cast<double>(morse::reduce_units(morse::li2_parameters()).delta);
  const auto b = fd_spectrum(d, kBeta, kXe, grid(2000), 3);
  for (int n = 0; n < 3; ++n) CHECK(a.energies[n] == doctest::Approx(b.energies[n]).epsilon(1e-13));
}

TEST_CASE("harmonic oscillator test problem") {
  const auto p = oscillator_problem<Rational>();
  CHECK(p.u_star() == 1);
  CHECK(p.order() == LevelOrder::ascending);
  const auto levels = eigenvalues_symbolic(p, 4, 10, BigReal(0));
  for (int n = 0; n < 4; ++n) CHECK(levels[n].epsilon == 2 * n + 1);
}

}  // TEST_SUITE
