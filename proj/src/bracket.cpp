#include "aim/bracket.hpp"

namespace aim {

BracketResult bracketed_root(const std::function<BigReal(const BigReal&)>& f, BigReal lo, BigReal hi,
                             const BigReal& tol, int max_iterations) {
  BigReal f_lo = f(lo);
  BigReal f_hi = f(hi);
  return bracketed_root(f, std::move(lo), std::move(hi), std::move(f_lo), std::move(f_hi), tol, max_iterations);
}

BracketResult bracketed_root(const std::function<BigReal(const BigReal&)>& f, BigReal lo, BigReal hi,
                             BigReal f_lo, BigReal f_hi, const BigReal& tol, int max_iterations) {
  if (hi < lo) {
    std::swap(lo, hi);
    std::swap(f_lo, f_hi);
  }
  BracketResult out;
  if (f_lo == 0) {
    out.root = out.lo = out.hi = lo;
    out.converged = true;
    return out;
  }
  if (f_hi == 0) {
    out.root = out.lo = out.hi = hi;
    out.converged = true;
    return out;
  }
  if (sign(f_lo) == sign(f_hi)) {
    throw BracketError("no sign change on [" + format_sci(lo, 6) + ", " + format_sci(hi, 6) + "]");
  }

  // Illinois: halve the retained endpoint's value when the same side is kept twice.
  int side = 0;
  BigReal width_before = hi - lo;
  for (int it = 1; it <= max_iterations; ++it) {
    out.iterations = it;
    if (hi - lo <= tol) break;

    BigReal x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    const bool forced_bisection = (it % 4 == 0) && (hi - lo) > width_before / 2;
    if (forced_bisection || !(x > lo && x < hi)) x = (lo + hi) / 2;
    if (it % 4 == 0) width_before = hi - lo;

    const BigReal fx = f(x);
    if (fx == 0) {
      out.root = out.lo = out.hi = x;
      out.converged = true;
      return out;
    }
    if (sign(fx) == sign(f_lo)) {
      lo = x;
      f_lo = fx;
      if (side == -1) f_hi /= 2;
      side = -1;
    } else {
      hi = x;
      f_hi = fx;
      if (side == 1) f_lo /= 2;
      side = 1;
    }
  }
  out.lo = lo;
  out.hi = hi;
  out.root = (lo + hi) / 2;
  out.converged = hi - lo <= tol;
  return out;
}

}  // namespace aim
