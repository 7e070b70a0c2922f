#include "aim/scalar.hpp"

#include <cmath>
#include <algorithm>
#include <cctype>
#include <stdexcept>

#include <mpfr.h>

namespace aim {

PrecisionGuard::PrecisionGuard(unsigned digits) : previous_(BigReal::default_precision()) {
  if (digits < kMinDigits) {
    throw std::invalid_argument("BigReal precision must be at least " + std::to_string(kMinDigits) +
                                " decimal digits, got " + std::to_string(digits));
  }
  BigReal::default_precision(digits);
}

PrecisionGuard::~PrecisionGuard() { BigReal::default_precision(previous_); }

unsigned working_digits() { return BigReal::default_precision(); }

BigReal to_big(const Rational& q) {
  BigReal r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Rational to_rational(const BigReal& x) {
  if (x == 0) return Rational(0);
  if (!boost::multiprecision::isfinite(x)) throw std::domain_error("cannot convert non-finite BigReal to Rational");
  Integer mant;
  const mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x.backend().data());
  Rational q(mant);
  if (e > 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else if (e < 0) {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return q;
}

namespace {

Integer parse_digits(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
    }
  }
  return Integer(std::string(s), 10);
}

Integer pow10(unsigned long n) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, n);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number");

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational value;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_digits(text.substr(0, slash), whole);
    const Integer den = parse_digits(text.substr(slash + 1), whole);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
    value = Rational(num, den);
    value.canonicalize();
  } else {
    long exponent = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      const Integer ex = parse_digits(exp_text, whole);
      if (!ex.fits_slong_p() || abs(ex) > 100000) throw std::invalid_argument("exponent out of range");
      exponent = exp_negative ? -ex.get_si() : ex.get_si();
      text = text.substr(0, e);
    }
    std::string_view int_part = text;
    std::string_view frac_part;
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
      int_part = text.substr(0, dot);
      frac_part = text.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
    const Integer ip = int_part.empty() ? Integer(0) : parse_digits(int_part, whole);
    const Integer fp = frac_part.empty() ? Integer(0) : parse_digits(frac_part, whole);
    const Integer scale = pow10(frac_part.size());
    value = Rational(ip * scale + fp, scale);
    value.canonicalize();
    if (exponent > 0) value *= Rational(pow10(static_cast<unsigned long>(exponent)));
    if (exponent < 0) value /= Rational(pow10(static_cast<unsigned long>(-exponent)));
  }
  return negative ? Rational(-value) : value;
}

std::string format_fixed(const Rational& q, int significant) {
  if (significant < 1) throw std::invalid_argument("significant digits must be positive");
  if (sgn(q) == 0) return "0." + std::string(static_cast<std::size_t>(significant - 1), '0');

  const Rational a = abs(q);
  // Decimal exponent e with 10^e <= a < 10^(e+1).
  long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10));
  auto ten_pow = [](long n) {
    return n >= 0 ? Rational(pow10(static_cast<unsigned long>(n))) : Rational(Integer(1), pow10(static_cast<unsigned long>(-n)));
  };
  while (a < ten_pow(e)) --e;
  while (a >= ten_pow(e + 1)) ++e;

  // Negative for integers wider than `significant`: round to tens, hundreds, ...
  const long decimals = significant - 1 - e;
  const Rational scaled = a * ten_pow(decimals) + Rational(1, 2);
  Integer rounded;
  mpz_fdiv_q(rounded.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());

  std::string digits = rounded.get_str();
  if (decimals < 0 && rounded != 0) digits.append(static_cast<std::size_t>(-decimals), '0');
  if (decimals > 0) {
    if (static_cast<long>(digits.size()) <= decimals) {
      digits.insert(0, static_cast<std::size_t>(decimals - static_cast<long>(digits.size()) + 1), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
  }
  if (sgn(q) < 0 && rounded != 0) digits.insert(0, "-");
  return digits;
}

std::string format_fixed(const BigReal& x, int significant) { return format_fixed(to_rational(x), significant); }

std::string format_sci(const BigReal& x, int significant) {
  char* buffer = nullptr;
  const int n = mpfr_asprintf(&buffer, "%.*Re", significant - 1, x.backend().data());
  if (n < 0) throw std::runtime_error("mpfr_asprintf failed");
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

BigReal round_to_digits(const BigReal& x, unsigned digits) {
  BigReal out = x;
  mpfr_prec_round(out.backend().data(), static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)), MPFR_RNDN);
  return out;
}

std::string to_fraction_text(const Rational& q) { return q.get_str(); }

BigReal working_epsilon() {
  return boost::multiprecision::pow(BigReal(10), -static_cast<int>(working_digits()));
}

}  // namespace aim
