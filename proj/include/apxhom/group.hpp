#pragma once

// Finitely generated Abelian groups presented as direct sums of cyclic
// factors Z/d_1 + ... + Z/d_n, where a modulus of 0 denotes a copy of Z.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "apxhom/rational.hpp"

namespace apxhom {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("coordinate overflow in addition");
  return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("coordinate overflow in multiplication");
  return out;
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

/// r*x mod m without overflow for any int64 r, x and m > 0.
inline std::int64_t mul_mod(std::int64_t r, std::int64_t x, std::int64_t m) {
  __int128 prod = static_cast<__int128>(mod_floor(r, m)) * static_cast<__int128>(mod_floor(x, m));
  return static_cast<std::int64_t>(prod % m);
}

inline std::int64_t gcd_abs(std::int64_t a, std::int64_t b) {
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

/// Prime factorisation by trial division; fine for moduli at this scale.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p <= n / p; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace detail

/// Ordered list of cyclic factor moduli. Each entry is either >= 2 or 0 (a copy of Z).
class GroupSpec {
 public:
  GroupSpec() = default;

  explicit GroupSpec(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
      if (moduli_[i] == 1)
        throw std::invalid_argument("modulus 1 at factor " + std::to_string(i) + " is not allowed");
      if (moduli_[i] < 0)
        throw std::invalid_argument("negative modulus at factor " + std::to_string(i));
    }
  }

  GroupSpec(std::initializer_list<std::int64_t> moduli)
      : GroupSpec(std::vector<std::int64_t>(moduli)) {}

  std::span<const std::int64_t> moduli() const { return moduli_; }
  std::size_t factor_count() const { return moduli_.size(); }
  std::int64_t modulus(std::size_t i) const { return moduli_.at(i); }

  bool is_finite() const {
    return std::none_of(moduli_.begin(), moduli_.end(), [](std::int64_t d) { return d == 0; });
  }

  /// |G| as an exact integer. Throws for infinite groups.
  BigInt order_exact() const {
    require_finite("order");
    BigInt n = 1;
    for (auto d : moduli_) n *= d;
    return n;
  }

  /// |G| as a machine integer, for dense indexing. Throws if infinite or too large.
  std::uint64_t order() const {
    require_finite("order");
    std::uint64_t n = 1;
    for (auto d : moduli_) {
      if (__builtin_mul_overflow(n, static_cast<std::uint64_t>(d), &n) ||
          n > (std::uint64_t{1} << 62))
        throw std::overflow_error("group order exceeds 2^62");
    }
    return n;
  }

  void require_finite(const char* what) const {
    if (!is_finite())
      throw std::invalid_argument(std::string(what) + " requires a finite group (spec has a 0 modulus)");
  }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  std::vector<std::int64_t> moduli_;
};

/// A coordinate vector, canonical for its owning spec: coordinate i lies in
/// [0, d_i) for finite factors. Construct through `make_element` to reduce.
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
  GroupElement(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

  std::span<const std::int64_t> coords() const { return coords_; }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::size_t size() const { return coords_.size(); }

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  std::vector<std::int64_t> coords_;
};

namespace detail {
inline void require_length(const GroupSpec& spec, const GroupElement& x) {
  if (x.size() != spec.factor_count())
    throw std::invalid_argument("element has " + std::to_string(x.size()) +
                                " coordinates but spec has " + std::to_string(spec.factor_count()) +
                                " factors");
}
}  // namespace detail

inline GroupElement make_element(const GroupSpec& spec, std::vector<std::int64_t> coords) {
  if (coords.size() != spec.factor_count())
    throw std::invalid_argument("coordinate count does not match spec");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    auto d = spec.modulus(i);
    if (d != 0) coords[i] = detail::mod_floor(coords[i], d);
  }
  return GroupElement(std::move(coords));
}

inline GroupElement identity(const GroupSpec& spec) {
  return GroupElement(std::vector<std::int64_t>(spec.factor_count(), 0));
}

inline GroupElement add(const GroupSpec& spec, const GroupElement& x, const GroupElement& y) {
  detail::require_length(spec, x);
  detail::require_length(spec, y);
  std::vector<std::int64_t> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto d = spec.modulus(i);
    if (d == 0) {
      out[i] = detail::checked_add(x[i], y[i]);
    } else {
      auto s = x[i] + y[i];  // both in [0, d), no overflow for d < 2^62
      out[i] = s >= d ? s - d : s;
    }
  }
  return GroupElement(std::move(out));
}

inline GroupElement neg(const GroupSpec& spec, const GroupElement& x) {
  detail::require_length(spec, x);
  std::vector<std::int64_t> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto d = spec.modulus(i);
    if (d == 0) {
      if (x[i] == std::numeric_limits<std::int64_t>::min()) throw std::overflow_error("coordinate overflow in negation");
      out[i] = -x[i];
    } else {
      out[i] = x[i] == 0 ? 0 : d - x[i];
    }
  }
  return GroupElement(std::move(out));
}

inline GroupElement sub(const GroupSpec& spec, const GroupElement& x, const GroupElement& y) {
  return add(spec, x, neg(spec, y));
}

/// r*x, reduced canonically; negative r allowed.
inline GroupElement scalar_mul(const GroupSpec& spec, std::int64_t r, const GroupElement& x) {
  detail::require_length(spec, x);
  std::vector<std::int64_t> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto d = spec.modulus(i);
    out[i] = d == 0 ? detail::checked_mul(r, x[i]) : detail::mul_mod(r, x[i], d);
  }
  return GroupElement(std::move(out));
}

/// Concatenation of moduli, A's factors first.
inline GroupSpec direct_product(const GroupSpec& a, const GroupSpec& b) {
  std::vector<std::int64_t> m(a.moduli().begin(), a.moduli().end());
  m.insert(m.end(), b.moduli().begin(), b.moduli().end());
  return GroupSpec(std::move(m));
}

inline GroupElement join(const GroupElement& x, const GroupElement& y) {
  std::vector<std::int64_t> c(x.coords().begin(), x.coords().end());
  c.insert(c.end(), y.coords().begin(), y.coords().end());
  return GroupElement(std::move(c));
}

/// Coordinates [first, first + count) of x.
inline GroupElement slice(const GroupElement& x, std::size_t first, std::size_t count) {
  auto c = x.coords().subspan(first, count);
  return GroupElement(std::vector<std::int64_t>(c.begin(), c.end()));
}

/// Canonical invariant-factor form: finite part as a divisibility chain
/// d_1 | d_2 | ... | d_n (ascending), followed by the infinite factors.
inline GroupSpec invariant_factors(const GroupSpec& spec) {
  std::map<std::int64_t, std::vector<std::int64_t>> prime_powers;
  std::size_t infinite = 0;
  for (auto d : spec.moduli()) {
    if (d == 0) {
      ++infinite;
      continue;
    }
    for (auto [p, e] : detail::factorize(d)) {
      std::int64_t q = 1;
      for (int i = 0; i < e; ++i) q *= p;
      prime_powers[p].push_back(q);
    }
  }
  std::size_t n = 0;
  for (auto& [p, powers] : prime_powers) {
    std::sort(powers.begin(), powers.end(), std::greater<>());
    n = std::max(n, powers.size());
  }
  // chain[0] is the largest factor; it collects the largest power of each prime.
  std::vector<std::int64_t> chain(n, 1);
  for (auto& [p, powers] : prime_powers)
    for (std::size_t i = 0; i < powers.size(); ++i) chain[i] *= powers[i];
  std::reverse(chain.begin(), chain.end());
  chain.insert(chain.end(), infinite, 0);
  return GroupSpec(std::move(chain));
}

/// Exponent of a finite group: lcm of its moduli.
inline std::int64_t exponent(const GroupSpec& spec) {
  spec.require_finite("exponent");
  std::int64_t e = 1;
  for (auto d : spec.moduli()) e = std::lcm(e, d);
  return e;
}

/// |K_{G,r}| = prod gcd(r, d_i).
inline BigInt kernel_order(const GroupSpec& spec, std::int64_t r) {
  if (r == 0) return spec.order_exact();
  BigInt n = 1;
  for (auto d : spec.moduli())
    if (d != 0) n *= detail::gcd_abs(r, d);
  return n;
}

/// |r.G| = prod d_i / gcd(r, d_i).
inline BigInt dilate_order(const GroupSpec& spec, std::int64_t r) {
  spec.require_finite("dilate_image");
  BigInt n = 1;
  for (auto d : spec.moduli()) n *= d / detail::gcd_abs(r, d);
  return n;
}

// ---------------------------------------------------------------------------
// Dense indexing: little-endian mixed radix, first modulus fastest.

inline std::uint64_t rank(const GroupSpec& spec, const GroupElement& x) {
  detail::require_length(spec, x);
  spec.require_finite("rank");
  std::uint64_t k = 0;
  for (std::size_t i = spec.factor_count(); i-- > 0;) {
    auto d = spec.modulus(i);
    if (x[i] < 0 || x[i] >= d) throw std::invalid_argument("element is not canonical for spec");
    k = k * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(x[i]);
  }
  return k;
}

inline GroupElement unrank(const GroupSpec& spec, std::uint64_t k) {
  auto n = spec.order();
  if (k >= n) throw std::out_of_range("rank " + std::to_string(k) + " out of range [0, " + std::to_string(n) + ")");
  std::vector<std::int64_t> c(spec.factor_count());
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto d = static_cast<std::uint64_t>(spec.modulus(i));
    c[i] = static_cast<std::int64_t>(k % d);
    k /= d;
  }
  return GroupElement(std::move(c));
}

/// Group arithmetic directly on ranks of a finite spec, without materialising
/// coordinate vectors.
class DenseIndexer {
 public:
  explicit DenseIndexer(const GroupSpec& spec) : order_(spec.order()) {
    moduli_.reserve(spec.factor_count());
    for (auto d : spec.moduli()) moduli_.push_back(static_cast<std::uint64_t>(d));
    // Z/2^k factors combine by xor when every factor is 2.
    all_two_ = std::all_of(moduli_.begin(), moduli_.end(), [](std::uint64_t d) { return d == 2; });
  }

  std::uint64_t order() const { return order_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    if (all_two_) return a ^ b;
    if (moduli_.size() == 1) {
      auto s = a + b;
      return s >= order_ ? s - order_ : s;
    }
    std::uint64_t out = 0, stride = 1;
    for (auto d : moduli_) {
      auto s = a % d + b % d;
      if (s >= d) s -= d;
      out += s * stride;
      stride *= d;
      a /= d;
      b /= d;
    }
    return out;
  }

  std::uint64_t neg(std::uint64_t a) const {
    if (all_two_) return a;
    std::uint64_t out = 0, stride = 1;
    for (auto d : moduli_) {
      auto c = a % d;
      out += (c == 0 ? 0 : d - c) * stride;
      stride *= d;
      a /= d;
    }
    return out;
  }

  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

  std::uint64_t scalar_mul(std::int64_t r, std::uint64_t a) const {
    std::uint64_t out = 0, stride = 1;
    for (auto d : moduli_) {
      auto m = static_cast<std::int64_t>(d);
      auto c = static_cast<std::int64_t>(a % d);
      out += static_cast<std::uint64_t>(detail::mul_mod(r, c, m)) * stride;
      stride *= d;
      a /= d;
    }
    return out;
  }

 private:
  std::vector<std::uint64_t> moduli_;
  std::uint64_t order_;
  bool all_two_ = false;
};

}  // namespace apxhom
