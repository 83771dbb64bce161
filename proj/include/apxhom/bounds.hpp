#pragma once

// Closed-form bound expressions for injections f : G -> H:
//   base  = min{|r.G| |K_{H,r}|, |r.H| |K_{G,r}|} / |G|
//   alpha = max{1/(5r+1), 1/(18 floor(log2 r) + 7)}
// and the prime-indexed constant c(r) = log2(r) * alpha(r).
//
// Every comparison involving log2 is settled in integers: a log2 x < b log2 y
// iff x^a < y^b once a and b are brought to a common denominator.

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "apxhom/group.hpp"
#include "apxhom/rational.hpp"

namespace apxhom {

inline int floor_log2(std::int64_t r) {
  if (r < 1) throw std::invalid_argument("floor_log2 needs r >= 1");
  return static_cast<int>(std::bit_width(static_cast<std::uint64_t>(r))) - 1;
}

inline Rational theorem_alpha(std::int64_t r) {
  if (r < 1) throw std::invalid_argument("r must be a positive integer (got " + std::to_string(r) + ")");
  Rational first(1, 5 * r + 1);
  Rational second(1, 18 * floor_log2(r) + 7);
  return first > second ? first : second;
}

enum class BoundSide {
  /// |r.G| |K_{H,r}|
  domain_dilation,
  /// |r.H| |K_{G,r}|
  codomain_dilation,
};

inline const char* side_name(BoundSide s) {
  return s == BoundSide::domain_dilation ? "domain_dilation" : "codomain_dilation";
}

struct BoundTerms {
  BigInt domain_term;    // |r.G| |K_{H,r}|
  BigInt codomain_term;  // |r.H| |K_{G,r}|
};

inline BoundTerms theorem_terms(const GroupSpec& g, const GroupSpec& h, std::int64_t r) {
  if (r < 1) throw std::invalid_argument("r must be a positive integer");
  g.require_finite("bound");
  h.require_finite("bound");
  return {dilate_order(g, r) * kernel_order(h, r), dilate_order(h, r) * kernel_order(g, r)};
}

inline Rational theorem_base(const GroupSpec& g, const GroupSpec& h, std::int64_t r) {
  auto t = theorem_terms(g, h, r);
  return Rational(t.domain_term <= t.codomain_term ? t.domain_term : t.codomain_term, g.order_exact());
}

struct BoundReport {
  std::int64_t r = 1;
  Rational alpha;
  Rational base;
  /// base^alpha, 12 significant digits. Display only.
  std::string bound_value;
  BoundSide side_used = BoundSide::domain_dilation;
};

inline BoundReport theorem_bound(const GroupSpec& g, const GroupSpec& h, std::int64_t r) {
  auto t = theorem_terms(g, h, r);
  BoundReport rep;
  rep.r = r;
  rep.alpha = theorem_alpha(r);
  rep.side_used = t.domain_term <= t.codomain_term ? BoundSide::domain_dilation : BoundSide::codomain_dilation;
  rep.base = Rational(rep.side_used == BoundSide::domain_dilation ? t.domain_term : t.codomain_term, g.order_exact());
  rep.bound_value = power_decimal_string(rep.base, rep.alpha);
  return rep;
}

/// Exact three-way comparison of b1^a1 against b2^a2 for positive rational bases
/// and positive rational exponents.
inline int compare_powers(const Rational& b1, const Rational& a1, const Rational& b2, const Rational& a2) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (b1 <= 0 || b2 <= 0 || a1 <= 0 || a2 <= 0) throw std::invalid_argument("compare_powers needs positive inputs");
  // Raise both sides to den(a1) * den(a2).
  auto e1 = (numerator(a1) * denominator(a2)).convert_to<std::uint64_t>();
  auto e2 = (numerator(a2) * denominator(a1)).convert_to<std::uint64_t>();
  BigInt lhs = pow_big(numerator(b1), e1) * pow_big(denominator(b2), e2);
  BigInt rhs = pow_big(numerator(b2), e2) * pow_big(denominator(b1), e1);
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

/// Smallest base^alpha over r in [r_lo, r_hi]; ties go to the smaller r.
inline BoundReport best_bound_over_r(const GroupSpec& g, const GroupSpec& h, std::int64_t r_lo, std::int64_t r_hi) {
  if (r_lo < 1 || r_hi < r_lo) throw std::invalid_argument("invalid r range");
  BoundReport best = theorem_bound(g, h, r_lo);
  for (std::int64_t r = r_lo + 1; r <= r_hi; ++r) {
    auto cand = theorem_bound(g, h, r);
    if (compare_powers(cand.base, cand.alpha, best.base, best.alpha) < 0) best = cand;
  }
  return best;
}

/// The quantity coefficient * log2(argument), kept symbolic.
struct LogValue {
  BigInt argument = 1;  // >= 1
  Rational coefficient = 0;  // >= 0

  std::string to_string() const {
    return "log2(" + argument.str() + ")*" + to_fraction_string(coefficient);
  }
  /// Display only.
  double approx() const { return std::log2(argument.convert_to<double>()) * to_double(coefficient); }
};

/// Exact three-way comparison of a log2 x against b log2 y.
inline int compare(const LogValue& lhs, const LogValue& rhs) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (lhs.argument < 1 || rhs.argument < 1 || lhs.coefficient < 0 || rhs.coefficient < 0)
    throw std::invalid_argument("LogValue needs argument >= 1 and a nonnegative coefficient");
  auto e1 = (numerator(lhs.coefficient) * denominator(rhs.coefficient)).convert_to<std::uint64_t>();
  auto e2 = (numerator(rhs.coefficient) * denominator(lhs.coefficient)).convert_to<std::uint64_t>();
  BigInt a = pow_big(lhs.argument, e1);
  BigInt b = pow_big(rhs.argument, e2);
  return a < b ? -1 : (a > b ? 1 : 0);
}

inline bool operator<(const LogValue& a, const LogValue& b) { return compare(a, b) < 0; }
inline bool operator==(const LogValue& a, const LogValue& b) { return compare(a, b) == 0; }

/// c(r) = max{log2 r / (5r+1), log2 r / (18 floor(log2 r) + 7)} = log2(r) * alpha(r).
inline LogValue c_of_r(std::int64_t r) {
  if (r < 2) throw std::invalid_argument("c(r) needs r >= 2");
  return LogValue{BigInt(r), theorem_alpha(r)};
}

inline std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
  std::vector<std::int64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (std::int64_t m = p * p; m <= limit; m += p) composite[m] = true;
  }
  return out;
}

struct PrimeMinimum {
  std::int64_t prime = 0;
  LogValue value;
};

/// argmin of c(p) over primes p <= limit; ties resolve to the smaller prime.
inline PrimeMinimum minimize_c_over_primes(std::int64_t limit) {
  auto primes = primes_up_to(limit);
  if (primes.empty()) throw std::invalid_argument("minimize_c_over_primes needs limit >= 2");
  PrimeMinimum best{primes.front(), c_of_r(primes.front())};
  for (std::size_t i = 1; i < primes.size(); ++i) {
    auto v = c_of_r(primes[i]);
    if (compare(v, best.value) < 0) best = {primes[i], v};
  }
  return best;
}

}  // namespace apxhom
