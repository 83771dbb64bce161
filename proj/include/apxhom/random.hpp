#pragma once

// Portable seeded randomness. std::uniform_int_distribution is
// implementation-defined, so bounded draws use rejection sampling directly on
// mt19937_64 output to keep runs identical across standard libraries.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "apxhom/element_set.hpp"

namespace apxhom {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}
  /// Stream for trial `trial` of a campaign seeded with `seed`.
  Rng(std::uint64_t seed, std::uint64_t trial) : engine_(splitmix64(splitmix64(seed) ^ (trial * 0x9e3779b97f4a7c15ULL))) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below(0)");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do v = engine_();
    while (v >= limit);
    return v % n;
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool coin() { return engine_() & 1u; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

/// `count` distinct values from [0, n), in draw order.
inline std::vector<std::uint64_t> sample_distinct(Rng& rng, std::uint64_t n, std::size_t count) {
  if (count > n) throw std::invalid_argument("sample_distinct: count exceeds population");
  std::vector<std::uint64_t> pool(n);
  for (std::uint64_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < count; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
  pool.resize(count);
  return pool;
}

/// Random finite spec with order in [min_order, max_order] (best effort on the lower end).
inline GroupSpec random_finite_spec(Rng& rng, std::uint64_t max_order, std::uint64_t min_order = 2) {
  if (max_order < 2) return GroupSpec{};
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<std::int64_t> moduli;
    std::uint64_t order = 1;
    while (order * 2 <= max_order) {
      auto d = static_cast<std::int64_t>(2 + rng.below(max_order / order - 1));
      moduli.push_back(d);
      order *= static_cast<std::uint64_t>(d);
      if (rng.below(3) == 0) break;
    }
    if (order >= min_order) return GroupSpec(moduli);
  }
  return GroupSpec{static_cast<std::int64_t>(min_order)};
}

/// Random subset of a finite universe set, of the given size.
inline ElementSet random_subset(Rng& rng, const ElementSet& universe, std::size_t size) {
  auto ranks = universe.ranks();
  auto pick = sample_distinct(rng, ranks.size(), size);
  std::vector<std::uint64_t> chosen;
  for (auto i : pick) chosen.push_back(ranks[i]);
  return ElementSet::from_ranks(universe.spec(), chosen, universe.storage());
}

/// Random subset of a finite group of the given size.
inline ElementSet random_subset(Rng& rng, const GroupSpec& spec, std::size_t size) {
  auto pick = sample_distinct(rng, spec.order(), size);
  return ElementSet::from_ranks(spec, pick);
}

}  // namespace apxhom
