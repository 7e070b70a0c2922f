#include "aim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <lapacke.h>

namespace aim::oracle {
namespace {

void validate(const GridSpec& g) {
  if (g.num_points < 100) throw std::invalid_argument("grid needs at least 100 points");
  if (!(g.x_min < g.x_max)) throw std::invalid_argument("grid needs x_min < x_max");
}

}  // namespace

FdSpectrum fd_spectrum(const std::function<double(double)>& potential, double kinetic_coefficient,
                       const GridSpec& grid, int n_levels) {
  validate(grid);
  if (n_levels < 1) throw std::invalid_argument("n_levels must be positive");
  const int interior = grid.num_points - 2;
  if (n_levels > interior) throw std::invalid_argument("more levels requested than interior grid points");

  const double h = (grid.x_max - grid.x_min) / (grid.num_points - 1);
  const double off = -kinetic_coefficient / (h * h);
  std::vector<double> diag(static_cast<std::size_t>(interior));
  std::vector<double> sub(static_cast<std::size_t>(interior), off);
  for (int i = 0; i < interior; ++i) {
    const double x = grid.x_min + (i + 1) * h;
    diag[static_cast<std::size_t>(i)] = 2 * kinetic_coefficient / (h * h) + potential(x);
  }

  std::vector<double> w(static_cast<std::size_t>(interior));
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(interior));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'N', 'I', interior, diag.data(), sub.data(), 0.0, 0.0, 1,
                                         n_levels, 0.0, &found, w.data(), nullptr, 1, isuppz.data());
  if (info != 0) throw std::runtime_error("dstevr failed with info = " + std::to_string(info));

  FdSpectrum out;
  out.energies.assign(w.begin(), w.begin() + found);

  // Points per local wavelength at the highest requested level, and whether
  // that level still sits below the potential at both grid ends.
  const double top = out.energies.back();
  const double v_edge = std::min(potential(grid.x_min), potential(grid.x_max));
  double v_min = v_edge;
  for (int i = 0; i < interior; ++i) v_min = std::min(v_min, diag[static_cast<std::size_t>(i)] - 2 * kinetic_coefficient / (h * h));
  const double k_local = std::sqrt(std::max(0.0, top - v_min) / kinetic_coefficient);
  const double points_per_wavelength = k_local > 0 ? 2 * std::numbers::pi / (k_local * h) : 1e300;
  if (top >= v_edge) {
    out.resolution_warning = true;
    out.warning = "highest level is not confined by the potential inside the grid";
  } else if (points_per_wavelength < 10) {
    out.resolution_warning = true;
    out.warning = "fewer than 10 grid points per local wavelength at the highest level";
  }
  return out;
}

FdSpectrum fd_spectrum(double delta, double beta, double xe, const GridSpec& grid, int n_levels) {
  if (!(grid.x_min < xe && xe < grid.x_max)) throw std::invalid_argument("grid must contain xe");
  auto v = [=](double x) {
    const double y = std::exp(-beta * (x - xe));
    return delta * (y * y - 2 * y);
  };
  return fd_spectrum(v, 1.0 / (4 * delta * beta * beta), grid, n_levels);
}

FdSpectrum fd_spectrum(const morse::MorseParameters& p, const GridSpec& grid, int n_levels) {
  const auto reduced = morse::reduce_units(p);
  return fd_spectrum(reduced.delta.convert_to<double>(), p.beta_per_angstrom, p.xe_angstrom, grid, n_levels);
}

template <Scalar T>
AimProblem<T> oscillator_problem() {
  using Terms = typename LaurentPoly<T>::Terms;
  LaurentPoly<T> lambda0(Terms{{1, EpsPoly<T>::constant(T(2))}});
  LaurentPoly<T> s0(Terms{{0, EpsPoly<T>{T(1), T(-1)}}});
  return AimProblem<T>(std::move(lambda0), std::move(s0), T(1), "oscillator", LevelOrder::ascending);
}

template AimProblem<Rational> oscillator_problem();
template AimProblem<BigReal> oscillator_problem();

}  // namespace aim::oracle
