#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "apxhom/group.hpp"

namespace apxhom {

enum class Storage { automatic, dense, sparse };

/// Orders elements by their last coordinate first, so on canonical elements of a
/// finite spec it coincides with rank order.
struct RankOrderLess {
  bool operator()(const GroupElement& a, const GroupElement& b) const {
    return std::lexicographical_compare(a.coords().rbegin(), a.coords().rend(), b.coords().rbegin(), b.coords().rend());
  }
};

/// Largest order for which sets default to a rank-indexed bitset.
inline constexpr std::uint64_t kDenseOrderLimit = std::uint64_t{1} << 24;

/// A finite subset of a group. Dense storage is a bitset indexed by rank
/// (finite specs only); sparse storage is a list of canonical elements sorted by RankOrderLess.
/// Equality is set equality regardless of storage.
class ElementSet {
 public:
  ElementSet() = default;

  static Storage resolve(const GroupSpec& spec, Storage requested) {
    bool dense_ok = spec.is_finite() && spec.order() <= kDenseOrderLimit;
    if (requested == Storage::dense) {
      if (!spec.is_finite()) throw std::invalid_argument("dense storage requires a finite spec");
      return Storage::dense;
    }
    if (requested == Storage::sparse) return Storage::sparse;
    return dense_ok ? Storage::dense : Storage::sparse;
  }

  static ElementSet empty(const GroupSpec& spec, Storage storage = Storage::automatic) {
    ElementSet s;
    s.spec_ = spec;
    s.storage_ = resolve(spec, storage);
    if (s.storage_ == Storage::dense) s.bits_.assign((spec.order() + 63) / 64, 0);
    return s;
  }

  /// Elements are reduced canonically; duplicates are dropped.
  static ElementSet from_elements(const GroupSpec& spec, std::vector<GroupElement> elems,
                                  Storage storage = Storage::automatic) {
    ElementSet s = empty(spec, storage);
    for (auto& e : elems) e = make_element(spec, std::vector<std::int64_t>(e.coords().begin(), e.coords().end()));
    if (s.storage_ == Storage::dense) {
      for (const auto& e : elems) s.insert_rank(rank(spec, e));
    } else {
      std::sort(elems.begin(), elems.end(), RankOrderLess{});
      elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
      s.sparse_ = std::move(elems);
      s.size_ = s.sparse_.size();
    }
    return s;
  }

  static ElementSet from_ranks(const GroupSpec& spec, const std::vector<std::uint64_t>& ranks,
                               Storage storage = Storage::automatic) {
    ElementSet s = empty(spec, storage);
    if (s.storage_ == Storage::dense) {
      auto n = spec.order();
      for (auto k : ranks) {
        if (k >= n) throw std::out_of_range("rank out of range");
        s.insert_rank(k);
      }
      return s;
    }
    std::vector<GroupElement> elems;
    elems.reserve(ranks.size());
    for (auto k : ranks) elems.push_back(unrank(spec, k));
    return from_elements(spec, std::move(elems), Storage::sparse);
  }

  /// The whole of a finite group.
  static ElementSet whole(const GroupSpec& spec, Storage storage = Storage::automatic) {
    ElementSet s = empty(spec, storage);
    auto n = spec.order();
    if (s.storage_ == Storage::dense) {
      for (std::uint64_t k = 0; k < n; ++k) s.insert_rank(k);
      return s;
    }
    std::vector<std::uint64_t> all(n);
    for (std::uint64_t k = 0; k < n; ++k) all[k] = k;
    return from_ranks(spec, all, Storage::sparse);
  }

  const GroupSpec& spec() const { return spec_; }
  std::size_t size() const { return size_; }
  bool is_empty() const { return size_ == 0; }
  bool is_dense() const { return storage_ == Storage::dense; }
  Storage storage() const { return storage_; }

  bool contains(const GroupElement& x) const {
    if (x.size() != spec_.factor_count()) return false;
    if (storage_ == Storage::dense) {
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < 0 || x[i] >= spec_.modulus(i)) return false;
      return contains_rank(rank(spec_, x));
    }
    return std::binary_search(sparse_.begin(), sparse_.end(), x, RankOrderLess{});
  }

  /// Dense storage only.
  bool contains_rank(std::uint64_t k) const {
    return (bits_[k >> 6] >> (k & 63)) & 1u;
  }

  /// Elements in canonical order (rank order, extended to Z factors by RankOrderLess).
  std::vector<GroupElement> elements() const {
    if (storage_ == Storage::sparse) return sparse_;
    std::vector<GroupElement> out;
    out.reserve(size_);
    for_each_rank([&](std::uint64_t k) { out.push_back(unrank(spec_, k)); });
    return out;
  }

  /// Ranks in increasing order (finite spec required).
  std::vector<std::uint64_t> ranks() const {
    std::vector<std::uint64_t> out;
    out.reserve(size_);
    if (storage_ == Storage::dense) {
      for_each_rank([&](std::uint64_t k) { out.push_back(k); });
    } else {
      for (const auto& e : sparse_) out.push_back(rank(spec_, e));
      std::sort(out.begin(), out.end());
    }
    return out;
  }

  template <class F>
  void for_each_rank(F&& f) const {
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      auto word = bits_[w];
      while (word) {
        auto bit = static_cast<std::uint64_t>(std::countr_zero(word));
        f(static_cast<std::uint64_t>(w) * 64 + bit);
        word &= word - 1;
      }
    }
  }

  std::span<const std::uint64_t> words() const { return bits_; }

  ElementSet to_dense() const {
    if (storage_ == Storage::dense) return *this;
    return from_elements(spec_, sparse_, Storage::dense);
  }

  ElementSet to_sparse() const {
    if (storage_ == Storage::sparse) return *this;
    ElementSet s;
    s.spec_ = spec_;
    s.storage_ = Storage::sparse;
    s.sparse_ = elements();
    s.size_ = s.sparse_.size();
    return s;
  }

  bool is_subset_of(const ElementSet& other) const {
    if (!(spec_ == other.spec_)) return false;
    if (storage_ == Storage::dense && other.storage_ == Storage::dense) {
      for (std::size_t w = 0; w < bits_.size(); ++w)
        if (bits_[w] & ~other.bits_[w]) return false;
      return true;
    }
    for (const auto& e : elements())
      if (!other.contains(e)) return false;
    return true;
  }

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    if (!(a.spec_ == b.spec_) || a.size_ != b.size_) return false;
    if (a.storage_ == Storage::dense && b.storage_ == Storage::dense) return a.bits_ == b.bits_;
    return a.is_subset_of(b);
  }

  /// Builder access for set algebra in this library.
  void insert_rank(std::uint64_t k) {
    auto& w = bits_[k >> 6];
    auto mask = std::uint64_t{1} << (k & 63);
    if (!(w & mask)) {
      w |= mask;
      ++size_;
    }
  }

  void unite_words(std::span<const std::uint64_t> other) {
    size_ = 0;
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      bits_[w] |= other[w];
      size_ += static_cast<std::size_t>(std::popcount(bits_[w]));
    }
  }

 private:
  GroupSpec spec_;
  Storage storage_ = Storage::sparse;
  std::vector<std::uint64_t> bits_;
  std::vector<GroupElement> sparse_;
  std::size_t size_ = 0;
};

inline void require_same_spec(const ElementSet& a, const ElementSet& b) {
  if (!(a.spec() == b.spec())) throw std::invalid_argument("sets live in different groups");
}

namespace detail {
/// Cartesian product of per-factor coordinate choices.
inline ElementSet product_set(const GroupSpec& spec, const std::vector<std::vector<std::int64_t>>& per_factor) {
  std::vector<GroupElement> elems;
  std::vector<std::size_t> idx(per_factor.size(), 0);
  while (true) {
    std::vector<std::int64_t> c(per_factor.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = per_factor[i][idx[i]];
    elems.emplace_back(std::move(c));
    std::size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < per_factor[i].size()) break;
      idx[i] = 0;
    }
    if (i == idx.size()) break;
  }
  return ElementSet::from_elements(spec, std::move(elems));
}
}  // namespace detail

/// K_{G,r}: the kernel of x -> r*x. Rejects r = 0 on groups with a Z factor.
inline ElementSet kernel_subgroup(const GroupSpec& spec, std::int64_t r) {
  if (r == 0 && !spec.is_finite())
    throw std::invalid_argument("kernel of multiplication by 0 on an infinite group is infinite");
  // Per factor: Z/d has kernel generated by d/gcd(r,d); Z has trivial kernel.
  std::vector<std::vector<std::int64_t>> per_factor;
  for (auto d : spec.moduli()) {
    std::vector<std::int64_t> options;
    if (d == 0) {
      options.push_back(0);
    } else {
      auto step = d / detail::gcd_abs(r, d);
      for (std::int64_t v = 0; v < d; v += step) options.push_back(v);
    }
    per_factor.push_back(std::move(options));
  }
  return detail::product_set(spec, per_factor);
}

/// The subgroup r.G of a finite group.
inline ElementSet dilate_image(const GroupSpec& spec, std::int64_t r) {
  spec.require_finite("dilate_image");
  std::vector<std::vector<std::int64_t>> per_factor;
  for (auto d : spec.moduli()) {
    std::vector<std::int64_t> options;
    auto step = detail::gcd_abs(r, d);
    for (std::int64_t v = 0; v < d; v += step) options.push_back(v);
    per_factor.push_back(std::move(options));
  }
  return detail::product_set(spec, per_factor);
}

}  // namespace apxhom
