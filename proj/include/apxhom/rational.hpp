#pragma once

// Exact integer and rational types shared by every module, plus the
// display-only decimal rendering used in reports.

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace apxhom {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Renders a rational as "num/den", always with an explicit denominator.
inline std::string to_fraction_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  return Rational(num, den);
}

inline BigInt pow_big(BigInt base, std::uint64_t exp) {
  BigInt result = 1;
  while (exp > 0) {
    if (exp & 1u) result *= base;
    exp >>= 1u;
    if (exp > 0) base *= base;
  }
  return result;
}

inline Rational pow_rational(const Rational& q, std::uint64_t exp) {
  return Rational(pow_big(boost::multiprecision::numerator(q), exp),
                  pow_big(boost::multiprecision::denominator(q), exp));
}

namespace detail {
using Decimal = boost::multiprecision::cpp_dec_float_50;

inline std::string render_decimal(const Decimal& value, int significant_digits) {
  std::ostringstream out;
  out << std::setprecision(significant_digits) << value;
  return out.str();
}
}  // namespace detail

/// Display-only decimal rendering (12 significant digits by default).
inline std::string to_decimal_string(const Rational& q, int significant_digits = 12) {
  detail::Decimal num(boost::multiprecision::numerator(q));
  detail::Decimal den(boost::multiprecision::denominator(q));
  return detail::render_decimal(num / den, significant_digits);
}

/// Display-only rendering of base^exponent.
inline std::string power_decimal_string(const Rational& base, const Rational& exponent,
                                       int significant_digits = 12) {
  detail::Decimal b(boost::multiprecision::numerator(base));
  b /= detail::Decimal(boost::multiprecision::denominator(base));
  detail::Decimal e(boost::multiprecision::numerator(exponent));
  e /= detail::Decimal(boost::multiprecision::denominator(exponent));
  return detail::render_decimal(boost::multiprecision::pow(b, e), significant_digits);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace apxhom
