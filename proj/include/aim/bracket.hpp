#pragma once

// Bracketing root finder (Illinois-modified regula falsi with a bisection
// fallback). Never leaves the bracket.

#include <functional>
#include <utility>

#include "aim/errors.hpp"
#include "aim/scalar.hpp"

namespace aim {

struct BracketResult {
  BigReal root;
  BigReal lo;
  BigReal hi;
  int iterations = 0;
  bool converged = false;
};

/// Finds a sign change of f in [lo, hi] to absolute width tol. Requires
/// f(lo) and f(hi) of opposite sign (or one of them zero); throws
/// BracketError otherwise.
BracketResult bracketed_root(const std::function<BigReal(const BigReal&)>& f, BigReal lo, BigReal hi,
                             const BigReal& tol, int max_iterations = 2000);

/// Same, with endpoint values already known.
BracketResult bracketed_root(const std::function<BigReal(const BigReal&)>& f, BigReal lo, BigReal hi,
                             BigReal f_lo, BigReal f_hi, const BigReal& tol, int max_iterations = 2000);

}  // namespace aim
