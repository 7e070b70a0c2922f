#include <doctest.h>

#include "aim/aim_engine.hpp"
#include "aim/morse.hpp"
#include "aim/real_roots.hpp"

using namespace aim;

namespace {

using QPoly = EpsPoly<Rational>;
Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}
BigReal tight() { return BigReal(1) / BigReal(1e40); }

QPoly from_roots(const std::vector<Rational>& roots) {
  QPoly p = QPoly::constant(1);
  for (const auto& r : roots) p = p * QPoly{-r, 1};
  return p;
}

}  // namespace

TEST_SUITE("real_roots") {

TEST_CASE("constructed factorisation") {
  const auto roots = real_roots(from_roots({q(3), q(-1)}), q(-10), q(10), tight());
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].exact == q(-1));
  CHECK(roots[1].exact == q(3));
  CHECK(roots[0].multiplicity == 1);
}

TEST_CASE("no real roots") {
  CHECK(real_roots(QPoly{1, 0, 1}, q(-10), q(10), tight()).empty());
  CHECK(real_roots(to_big(QPoly{1, 0, 1}), BigReal(-10), BigReal(10), tight()).empty());
}

TEST_CASE("degenerate and invalid input") {
  CHECK_THROWS_AS(real_roots(QPoly{}, q(-1), q(1), tight()), DegenerateInputError);
  CHECK_THROWS_AS(real_roots(EpsPoly<BigReal>{}, BigReal(-1), BigReal(1), tight()), DegenerateInputError);
  CHECK_THROWS_AS(real_roots(QPoly{1, 1}, q(1), q(-1), tight()), std::invalid_argument);
  CHECK_THROWS_AS(sturm_count(QPoly{}, q(0), q(1)), DegenerateInputError);
}

TEST_CASE("multiplicities") {
  const auto roots = real_roots(from_roots({q(1, 2), q(1, 2), q(1, 2), q(-2), q(-2)}), q(-5), q(5), tight());
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].exact == q(-2));
  CHECK(roots[0].multiplicity == 2);
  CHECK(roots[1].exact == q(1, 2));
  CHECK(roots[1].multiplicity == 3);
}

TEST_CASE("irrational roots are refined to tolerance") {
  // eps^2 - 2
  const auto roots = real_roots(QPoly{-2, 0, 1}, q(0), q(2), tight());
  REQUIRE(roots.size() == 1);
  CHECK_FALSE(roots[0].exact.has_value());
  CHECK(abs_value(BigReal(roots[0].value - boost::multiprecision::sqrt(BigReal(2)))) < tight() * 10);
}

TEST_CASE("closely spaced rational roots") {
  const Rational a(1000000, 999999);
  const auto roots = real_roots(from_roots({q(1), a, q(-7, 3)}), q(-3), q(3), tight());
  REQUIRE(roots.size() == 3);
  CHECK(roots[0].exact == q(-7, 3));
  CHECK(roots[1].exact == q(1));
  CHECK(roots[2].exact == a);
}

TEST_CASE("roots at the interval ends are included") {
  const auto roots = real_roots(from_roots({q(-1), q(1)}), q(-1), q(1), tight());
  CHECK(roots.size() == 2);
}

TEST_CASE("Sturm counts and square-free parts") {
  const QPoly p = from_roots({q(1), q(2), q(2), q(5)});
  CHECK(sturm_count(p, q(0), q(10)) == 3);
  CHECK(sturm_count(p, q(1), q(2)) == 1);  // half-open (lo, hi]
  CHECK(sturm_count(p, q(3), q(4)) == 0);
  const auto factors = square_free_factors(p);
  REQUIRE(factors.size() == 2);
  CHECK(factors[0].first == from_roots({q(1), q(5)}));
  CHECK(factors[0].second == 1);
  CHECK(factors[1].first == from_roots({q(2)}));
  CHECK(factors[1].second == 2);
}

TEST_CASE("gcd and simplest rational") {
  CHECK(poly_gcd(from_roots({q(1), q(2)}), from_roots({q(2), q(3)})) == from_roots({q(2)}));
  CHECK(poly_gcd(from_roots({q(1)}), from_roots({q(3)})) == QPoly::constant(1));
  CHECK(simplest_rational_between(q(31, 100), q(35, 100)) == q(1, 3));
  CHECK(simplest_rational_between(q(-7, 2), q(-3)) == q(-3));
  CHECK(simplest_rational_between(q(2), q(5)) == q(2));
}

TEST_CASE("Cauchy bound encloses every root") {
  const QPoly p = from_roots({q(-40), q(3, 7), q(12)});
  const Rational b = cauchy_bound(p);
  CHECK(b > 40);
  CHECK(sturm_count(p, -b, b) == 3);
}

TEST_CASE("residual of reported roots") {
  // |p(r)| at twice the working precision is below 10 * tol * scale near r.
  const QPoly p = from_roots({q(-3, 2), q(1, 7), q(9)}) * QPoly{-3, 0, 1};
  const BigReal tol = BigReal(1) / BigReal(1e30);
  const auto roots = real_roots(to_big(p), BigReal(-20), BigReal(20), tol);
  REQUIRE(roots.size() == 5);
  PrecisionGuard wide(2 * kDefaultDigits);
  const EpsPoly<BigReal> wide_p = to_big(p);
  const EpsPoly<BigReal> wide_dp = wide_p.derivative();
  for (const auto& r : roots) {
    const BigReal x = r.value;
    const BigReal scale = abs_value(wide_dp(x)) + 1;
    CHECK(abs_value(wide_p(x)) < 10 * tol * scale);
  }
  for (const auto& r : real_roots(p, q(-20), q(20), tol)) {
    if (r.exact) CHECK(p(*r.exact) == 0);
  }
}

TEST_CASE("Morse delta contains the exact ground-state root") {
  const Rational d(34997, 1000);
  const auto problem = morse::build_aim_problem(morse::ReducedMorse<Rational>(d));
  AimSequence<Rational> seq(problem);
  seq.advance();
  seq.advance();
  const QPoly delta = seq.current().delta_at_u;
  const Rational b = cauchy_bound(delta);
  const auto roots = real_roots(delta, -b, b, tight(), RootOptions{morse::exact_root_denominator(d)});
  bool found = false;
  for (const auto& r : roots) found = found || r.exact == q(276976, 2000);
  CHECK(found);
}

}  // TEST_SUITE
