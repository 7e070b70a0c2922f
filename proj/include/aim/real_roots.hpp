#pragma once

// Real-root isolation for polynomials in the eigenparameter.
//
// Exact mode: Yun square-free decomposition, Sturm sequences over primitive
// integer polynomials to isolate each root, then sign-change bisection.
// Rational roots with denominator <= max_denominator are reported exactly.
//
// Numeric mode: recursive bracketing between critical points (roots of the
// derivative), refined with the bisection-secant hybrid in bracket.hpp.

#include <optional>
#include <utility>
#include <vector>

#include "aim/eps_poly.hpp"

namespace aim {

struct RealRoot {
  BigReal value;
  std::optional<Rational> exact;
  int multiplicity = 1;
};

struct RootOptions {
  unsigned long max_denominator = 1'000'000;
};

std::vector<RealRoot> real_roots(const EpsPoly<Rational>& p, const Rational& lo, const Rational& hi,
                                 const BigReal& tol, const RootOptions& options = {});
std::vector<RealRoot> real_roots(const EpsPoly<BigReal>& p, const BigReal& lo, const BigReal& hi,
                                 const BigReal& tol);

/// Cauchy bound: every root r satisfies |r| < bound.
Rational cauchy_bound(const EpsPoly<Rational>& p);
BigReal cauchy_bound(const EpsPoly<BigReal>& p);

/// Monic greatest common divisor (zero only if both inputs are zero).
EpsPoly<Rational> poly_gcd(const EpsPoly<Rational>& a, const EpsPoly<Rational>& b);

/// Yun decomposition p = c * prod f_i^i; returns the non-constant (f_i, i), f_i monic.
std::vector<std::pair<EpsPoly<Rational>, int>> square_free_factors(const EpsPoly<Rational>& p);

/// Number of distinct real roots in (lo, hi] by Sturm's theorem.
int sturm_count(const EpsPoly<Rational>& p, const Rational& lo, const Rational& hi);

/// Simplest rational (smallest denominator, then numerator) in [lo, hi].
Rational simplest_rational_between(const Rational& lo, const Rational& hi);

}  // namespace aim
