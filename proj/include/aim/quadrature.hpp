#pragma once

#include <functional>

#include "aim/scalar.hpp"

namespace aim {

struct QuadratureResult {
  BigReal value;
  BigReal error;
  int intervals = 0;
};

/// Globally adaptive Gauss-Legendre quadrature on [a, b]. Each panel is
/// estimated by comparing one 12-point rule with two half-panel rules; the
/// worst panel is split until the summed estimate is below
/// max(rel_tol * |integral|, abs_tol). Throws QuadratureError after
/// max_panels panels.
QuadratureResult integrate(const std::function<BigReal(const BigReal&)>& f, const BigReal& a, const BigReal& b,
                           const BigReal& rel_tol, const BigReal& abs_tol = BigReal(0), int max_panels = 4000);

}  // namespace aim
