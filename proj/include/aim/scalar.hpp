#pragma once

// Scalar types shared by every module: an exact rational backed by GMP and an
// extended-precision real backed by MPFR. A computation uses exactly one of
// them; the polynomial templates below are instantiated once per mode.

#include <concepts>
#include <string>
#include <string_view>

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

namespace aim {

using Integer = mpz_class;
using Rational = mpq_class;
using BigReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                              boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultDigits = 64;
inline constexpr unsigned kMinDigits = 32;

template <class T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, BigReal>;

enum class Mode { exact, numeric };

template <Scalar T>
inline constexpr Mode mode_of = std::same_as<T, Rational> ? Mode::exact : Mode::numeric;

/// Sets the working precision (decimal digits) of newly created BigReal values
/// for the lifetime of the guard. Throws if digits < 32. Depending on the Boost
/// build the setting is per thread or per process, so guards that overlap in
/// time on different threads must request the same precision.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned digits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned previous_;
};

unsigned working_digits();

// Conversions. Rational -> BigReal is correctly rounded at the working
// precision; BigReal -> Rational is exact (every MPFR value is dyadic).
BigReal to_big(const Rational& q);
inline BigReal to_big(const BigReal& x) { return x; }
Rational to_rational(const BigReal& x);
/// x rounded to the nearest value with `digits` decimal digits of precision.
BigReal round_to_digits(const BigReal& x, unsigned digits);

/// Parses "p/q", an integer, or a decimal with optional exponent ("34.997",
/// "-1.5e-3") into an exact rational. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Fixed-point text with `significant` significant digits, rounded half away
/// from zero (exact for Rational, correctly rounded for BigReal).
std::string format_fixed(const Rational& q, int significant);
std::string format_fixed(const BigReal& x, int significant);

/// Scientific text, used for small differences.
std::string format_sci(const BigReal& x, int significant);

std::string to_fraction_text(const Rational& q);

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const BigReal& x) { return x == 0; }
inline int sign(const Rational& x) { return sgn(x); }
inline int sign(const BigReal& x) { return x == 0 ? 0 : (x < 0 ? -1 : 1); }
inline Rational abs_value(const Rational& x) { return abs(x); }
inline BigReal abs_value(const BigReal& x) { return boost::multiprecision::abs(x); }

/// Smallest power of ten expressible at the working precision, 10^-digits.
BigReal working_epsilon();

}  // namespace aim
