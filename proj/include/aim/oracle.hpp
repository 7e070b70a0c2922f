#pragma once

// Independent low-precision cross-checks for the AIM engine.

#include <functional>
#include <string>
#include <vector>

#include "aim/aim_engine.hpp"
#include "aim/morse.hpp"

namespace aim::oracle {

struct GridSpec {
  double x_min = 0;
  double x_max = 0;
  int num_points = 0;
};

struct FdSpectrum {
  /// Lowest eigenvalues, ascending.
  std::vector<double> energies;
  bool resolution_warning = false;
  std::string warning;
};

/// Lowest n_levels eigenvalues of -c psi'' + V psi on a uniform grid with
/// Dirichlet ends (three-point Laplacian, LAPACK dstevr).
FdSpectrum fd_spectrum(const std::function<double(double)>& potential, double kinetic_coefficient,
                       const GridSpec& grid, int n_levels);

/// Morse problem in units of hbar omega0: c = 1/(4 Delta beta^2),
/// V = Delta (exp(-2 beta (x - xe)) - 2 exp(-beta (x - xe))).
FdSpectrum fd_spectrum(double delta, double beta, double xe, const GridSpec& grid, int n_levels);
FdSpectrum fd_spectrum(const morse::MorseParameters& p, const GridSpec& grid, int n_levels);

/// psi = exp(-u^2/2) f turns psi'' = (u^2 - E) psi into f'' = 2u f' + (1 - E) f;
/// eigenvalues E = 2n + 1. Evaluated at u* = 1 since lambda0 vanishes at 0.
template <Scalar T>
AimProblem<T> oscillator_problem();

}  // namespace aim::oracle
