#include <doctest.h>

#include <random>
#include <sstream>

#include "aim/laurent_poly.hpp"

using namespace aim;

namespace {

using QPoly = EpsPoly<Rational>;
using QLaurent = LaurentPoly<Rational>;
using QTerms = QLaurent::Terms;

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

QLaurent random_laurent(std::mt19937& rng) {
  std::uniform_int_distribution<int> exp_dist(-3, 3);
  std::uniform_int_distribution<int> coef_dist(-9, 9);
  std::uniform_int_distribution<int> count_dist(1, 4);
  QTerms terms;
  const int n = count_dist(rng);
  for (int i = 0; i < n; ++i) {
    terms[exp_dist(rng)] = QPoly{q(coef_dist(rng), 1 + (coef_dist(rng) + 9) % 5), q(coef_dist(rng))};
  }
  return QLaurent(terms);
}

// lambda0 = 8 Delta u - (2 eps + 2) u^-1 for symbolic checks at a fixed Delta.
QLaurent morse_lambda0(const Rational& d) { return QLaurent(QTerms{{1, QPoly::constant(8 * d)}, {-1, QPoly{-2, -2}}}); }

template <class A, class B>
concept Multipliable = requires(A a, B b) { a * b; };
template <class A, class B>
concept Addable = requires(A a, B b) { a + b; };

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("rationals stay in lowest terms") {
  Rational a = parse_rational("34.997");
  CHECK(a == q(34997, 1000));
  CHECK(a.get_den() == 1000);
  CHECK(parse_rational("6/4").get_num() == 3);
  CHECK(parse_rational("6/4").get_den() == 2);
  CHECK(parse_rational("-2.5e-3") == q(-1, 400));
  CHECK(parse_rational("  1E2 ") == 100);
}

TEST_CASE("decimal fractions with leading zeros are read in base ten") {
  CHECK(parse_rational("-27.0131172907033879") == -Rational("270131172907033879/10000000000000000", 10));
  CHECK(parse_rational("0.08") == q(2, 25));
  CHECK(parse_rational("010") == 10);
}

TEST_CASE("malformed numbers are rejected") {
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1e"), std::invalid_argument);
}

TEST_CASE("precision guard") {
  CHECK(working_digits() == kDefaultDigits);
  {
    PrecisionGuard g(100);
    CHECK(working_digits() == 100);
    CHECK(BigReal(1).precision() >= 100);
  }
  CHECK(working_digits() == kDefaultDigits);
  CHECK_THROWS_AS(PrecisionGuard(31), std::invalid_argument);
}

TEST_CASE("rational to BigReal is correctly rounded") {
  // 1/3 at 64 digits: the error is below half an ulp of the working precision.
  const BigReal third = to_big(q(1, 3));
  CHECK(abs_value(BigReal(third * 3 - 1)) < working_epsilon());
  CHECK(to_rational(BigReal(0.5)) == q(1, 2));
  CHECK(to_rational(to_big(q(3, 8))) == q(3, 8));
}

TEST_CASE("fixed formatting rounds half away from zero") {
  CHECK(format_fixed(q(-17311, 125) / 4, 6) == "-34.6220");
  CHECK(format_fixed(q(1, 8), 2) == "0.13");
  CHECK(format_fixed(q(-1, 8), 2) == "-0.13");
  CHECK(format_fixed(q(0), 3) == "0.00");
  CHECK(format_fixed(q(123456), 3) == "123000");
  CHECK(format_fixed(to_big(q(1, 3)), 5) == "0.33333");
}

TEST_CASE("EpsPoly keeps a nonzero leading coefficient") {
  QPoly p{1, 2, 0, 0};
  CHECK(p.degree() == 1);
  CHECK((p - p).is_zero());
  CHECK((p - p).degree() == -1);
  const QPoly a{-3, 1};
  const QPoly b{1, 1};
  CHECK((a * b).degree() == a.degree() + b.degree());
  CHECK(a * b == QPoly{-3, -2, 1});
  CHECK((a * b)(q(3)) == 0);
  CHECK((a * b).derivative() == QPoly{-2, 2});
}

TEST_CASE("EpsPoly division") {
  const QPoly p{-3, -2, 1};
  const auto [quot, rem] = div_rem(p, QPoly{-3, 1});
  CHECK(quot == QPoly{1, 1});
  CHECK(rem.is_zero());
  CHECK_THROWS(div_rem(p, QPoly{}));
}

TEST_CASE("poly_mul: u times 1/u is 1") {
  const QLaurent u = QLaurent::term(1, QPoly::constant(1));
  const QLaurent inv = QLaurent::term(-1, QPoly::constant(1));
  CHECK(u * inv == QLaurent::constant(1));
}

TEST_CASE("poly_mul: square of the Morse lambda0") {
  const Rational d = q(34997, 1000);
  const QLaurent l0 = morse_lambda0(d);
  const QPoly two_eps_plus_two{2, 2};
  const QLaurent expected(QTerms{{2, QPoly::constant(64 * d * d)},
                                 {0, two_eps_plus_two * Rational(-16 * d)},
                                 {-2, two_eps_plus_two * two_eps_plus_two}});
  const QLaurent sq = l0 * l0;
  CHECK(sq == expected);
  CHECK(sq.min_exp() == 2 * l0.min_exp());
  CHECK(sq.max_exp() == 2 * l0.max_exp());
}

TEST_CASE("poly_mul: zero annihilates") {
  const QLaurent zero;
  CHECK((zero * morse_lambda0(q(1))).is_zero());
  CHECK((morse_lambda0(q(1)) * zero).is_zero());
}

TEST_CASE("poly_diff_u") {
  const Rational d = q(7, 3);
  const QLaurent dl = morse_lambda0(d).diff_u();
  CHECK(dl == QLaurent(QTerms{{0, QPoly::constant(8 * d)}, {-2, QPoly{2, 2}}}));
  CHECK(QLaurent::constant(5).diff_u().is_zero());
  CHECK(QLaurent::term(2, QPoly::constant(1)).diff_u() == QLaurent::term(1, QPoly::constant(2)));
}

TEST_CASE("poly_eval_u") {
  const Rational d = q(34997, 1000);
  CHECK(morse_lambda0(d).eval_u(q(1)) == QPoly{8 * d - 2, -2});
  CHECK(QLaurent::term(2, QPoly::constant(1)).eval_u(q(1)) == QPoly::constant(1));
  CHECK_THROWS_AS(QLaurent::term(-1, QPoly::constant(1)).eval_u(q(0)), PoleError);
  CHECK(QLaurent::term(2, QPoly::constant(3)).eval_u(q(0)).is_zero());
}

TEST_CASE("no zero coefficients are stored") {
  const QLaurent a = morse_lambda0(q(2));
  const QLaurent diff = a - a;
  CHECK(diff.is_zero());
  CHECK(diff.terms().empty());
  const QLaurent partial = a - QLaurent::term(1, QPoly::constant(16));
  CHECK(partial.terms().size() == 1);
}

TEST_CASE("ring axioms and product rule on random Laurent polynomials") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const QLaurent a = random_laurent(rng);
    const QLaurent b = random_laurent(rng);
    const QLaurent c = random_laurent(rng);
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK((a * b).diff_u() == a.diff_u() * b + a * b.diff_u());
  }
}

TEST_CASE("evaluation at u = 1 sums the coefficients") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const QLaurent a = random_laurent(rng);
    QPoly sum;
    for (const auto& [e, c] : a.terms()) sum += c;
    CHECK(a.eval_u(q(1)) == sum);
  }
}

TEST_CASE("scalar modes do not mix") {
  static_assert(Multipliable<QLaurent, QLaurent>);
  static_assert(Multipliable<LaurentPoly<BigReal>, LaurentPoly<BigReal>>);
  static_assert(!Multipliable<QLaurent, LaurentPoly<BigReal>>);
  static_assert(!Addable<EpsPoly<Rational>, EpsPoly<BigReal>>);
  static_assert(!Multipliable<EpsPoly<BigReal>, EpsPoly<Rational>>);
  CHECK(mode_of<Rational> == Mode::exact);
  CHECK(mode_of<BigReal> == Mode::numeric);
}

TEST_CASE("BigReal polynomials evaluate at the working precision") {
  const EpsPoly<BigReal> p = to_big(QPoly{q(-1, 3), q(1)});
  CHECK(abs_value(p(to_big(q(1, 3)))) < working_epsilon());
}

TEST_CASE("printing") {
  std::ostringstream os;
  os << QPoly{1, -2};
  CHECK_FALSE(os.str().empty());
}

}  // TEST_SUITE
