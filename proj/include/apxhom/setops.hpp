#pragma once

// Sumsets, dilations, and the exact counting quantities built on them:
// triple correlation <1_A * 1_A, 1_A> and additive energy ||1_X * 1_B||_2^2.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "apxhom/element_set.hpp"
#include "apxhom/parallel.hpp"

namespace apxhom {

namespace detail {

inline bool both_dense(const ElementSet& a, const ElementSet& b) { return a.is_dense() && b.is_dense(); }

template <class Op>
ElementSet pairwise_dense(const ElementSet& a, const ElementSet& b, Op op) {
  DenseIndexer ix(a.spec());
  auto ra = a.ranks();
  auto rb = b.ranks();
  ElementSet out = ElementSet::empty(a.spec(), Storage::dense);
  for (auto x : ra)
    for (auto y : rb) out.insert_rank(op(ix, x, y));
  return out;
}

template <class Op>
ElementSet pairwise_sparse(const ElementSet& a, const ElementSet& b, Op op) {
  const auto& spec = a.spec();
  auto ea = a.elements();
  auto eb = b.elements();
  std::vector<GroupElement> out;
  out.reserve(ea.size() * eb.size());
  for (const auto& x : ea)
    for (const auto& y : eb) out.push_back(op(spec, x, y));
  return ElementSet::from_elements(spec, std::move(out), Storage::sparse);
}

}  // namespace detail

/// A + B. Dense inputs take the rank path; anything sparse takes the element path
/// and produces a sparse result.
inline ElementSet sumset(const ElementSet& a, const ElementSet& b) {
  require_same_spec(a, b);
  if (detail::both_dense(a, b))
    return detail::pairwise_dense(a, b, [](const DenseIndexer& ix, auto x, auto y) { return ix.add(x, y); });
  return detail::pairwise_sparse(a, b, [](const GroupSpec& s, const auto& x, const auto& y) { return add(s, x, y); });
}

/// A - B.
inline ElementSet difference(const ElementSet& a, const ElementSet& b) {
  require_same_spec(a, b);
  if (detail::both_dense(a, b))
    return detail::pairwise_dense(a, b, [](const DenseIndexer& ix, auto x, auto y) { return ix.sub(x, y); });
  return detail::pairwise_sparse(a, b, [](const GroupSpec& s, const auto& x, const auto& y) { return sub(s, x, y); });
}

/// r.A = {ra : a in A}.
inline ElementSet dilate(std::int64_t r, const ElementSet& a) {
  if (a.is_dense()) {
    DenseIndexer ix(a.spec());
    ElementSet out = ElementSet::empty(a.spec(), Storage::dense);
    a.for_each_rank([&](std::uint64_t k) { out.insert_rank(ix.scalar_mul(r, k)); });
    return out;
  }
  std::vector<GroupElement> out;
  for (const auto& x : a.elements()) out.push_back(scalar_mul(a.spec(), r, x));
  return ElementSet::from_elements(a.spec(), std::move(out), Storage::sparse);
}

inline ElementSet negate(const ElementSet& a) { return dilate(-1, a); }

/// x + A.
inline ElementSet translate(const ElementSet& a, const GroupElement& x) {
  std::vector<GroupElement> single{x};
  auto point = ElementSet::from_elements(a.spec(), single, a.storage());
  return sumset(a, point);
}

/// kB = B + ... + B (k copies), k >= 1.
inline ElementSet iterated_sumset(int k, const ElementSet& b) {
  if (k < 1) throw std::invalid_argument("iterated_sumset needs k >= 1");
  ElementSet acc = b;
  for (int i = 1; i < k; ++i) acc = sumset(acc, b);
  return acc;
}

inline ElementSet unite(const ElementSet& a, const ElementSet& b) {
  require_same_spec(a, b);
  if (detail::both_dense(a, b)) {
    ElementSet out = a;
    out.unite_words(b.words());
    return out;
  }
  auto ea = a.elements();
  auto eb = b.elements();
  ea.insert(ea.end(), eb.begin(), eb.end());
  return ElementSet::from_elements(a.spec(), std::move(ea), Storage::sparse);
}

inline ElementSet intersect(const ElementSet& a, const ElementSet& b) {
  require_same_spec(a, b);
  std::vector<GroupElement> out;
  for (const auto& x : a.elements())
    if (b.contains(x)) out.push_back(x);
  return ElementSet::from_elements(a.spec(), std::move(out), a.storage());
}

/// Number of ordered pairs (a, b) in A^2 with a + b in A.
inline std::uint64_t triple_correlation(const ElementSet& a) {
  if (a.is_empty()) return 0;
  if (a.is_dense()) {
    DenseIndexer ix(a.spec());
    auto r = a.ranks();
    return parallel_count(
        r.size(),
        [&](std::size_t i) {
          std::uint64_t c = 0;
          for (auto y : r) c += a.contains_rank(ix.add(r[i], y));
          return c;
        },
        64);
  }
  auto e = a.elements();
  std::uint64_t count = 0;
  for (const auto& x : e)
    for (const auto& y : e) count += a.contains(add(a.spec(), x, y));
  return count;
}

/// The histogram s -> 1_X * 1_B(s) over the support X + B, as (element, count) pairs
/// in canonical element order.
inline std::vector<std::pair<GroupElement, std::uint64_t>> convolution_counts(const ElementSet& x,
                                                                              const ElementSet& b) {
  require_same_spec(x, b);
  std::vector<std::pair<GroupElement, std::uint64_t>> out;
  if (detail::both_dense(x, b) && x.spec().order() <= (std::uint64_t{1} << 16)) {
    // Direct counting into a rank-indexed array.
    DenseIndexer ix(x.spec());
    std::vector<std::uint64_t> hist(ix.order(), 0);
    auto rx = x.ranks();
    auto rb = b.ranks();
    for (auto u : rx)
      for (auto v : rb) ++hist[ix.add(u, v)];
    for (std::uint64_t k = 0; k < hist.size(); ++k)
      if (hist[k]) out.emplace_back(unrank(x.spec(), k), hist[k]);
    return out;
  }
  if (detail::both_dense(x, b)) {
    // Large finite groups: sort the rank list of all sums and count runs.
    DenseIndexer ix(x.spec());
    std::vector<std::uint64_t> sums;
    auto rx = x.ranks();
    auto rb = b.ranks();
    sums.reserve(rx.size() * rb.size());
    for (auto u : rx)
      for (auto v : rb) sums.push_back(ix.add(u, v));
    std::sort(sums.begin(), sums.end());
    for (std::size_t i = 0; i < sums.size();) {
      std::size_t j = i;
      while (j < sums.size() && sums[j] == sums[i]) ++j;
      out.emplace_back(unrank(x.spec(), sums[i]), j - i);
      i = j;
    }
    return out;
  }
  std::vector<GroupElement> sums;
  auto ex = x.elements();
  auto eb = b.elements();
  sums.reserve(ex.size() * eb.size());
  for (const auto& u : ex)
    for (const auto& v : eb) sums.push_back(add(x.spec(), u, v));
  std::sort(sums.begin(), sums.end());
  for (std::size_t i = 0; i < sums.size();) {
    std::size_t j = i;
    while (j < sums.size() && sums[j] == sums[i]) ++j;
    out.emplace_back(sums[i], j - i);
    i = j;
  }
  return out;
}

/// #{(x, y, z, w) in X x B x X x B : x + y = z + w} = sum_s (1_X * 1_B(s))^2.
inline std::uint64_t additive_energy(const ElementSet& x, const ElementSet& b) {
  std::uint64_t energy = 0;
  for (const auto& [s, c] : convolution_counts(x, b)) energy += c * c;
  return energy;
}

}  // namespace apxhom
