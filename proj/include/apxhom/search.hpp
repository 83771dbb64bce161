#pragma once

// Maximum-agreement injections between small finite groups: exhaustive
// branch-and-bound (with Aut(H)-orbit pruning of f(0) where automorphisms are
// available) and seeded hill climbing with restarts.
//
// Agreement is invariant under f -> tau o f o sigma for automorphisms sigma of
// G and tau of H, so f(0) may be restricted to one representative per
// Aut(H)-orbit without losing the optimum.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "apxhom/bounds.hpp"
#include "apxhom/parallel.hpp"
#include "apxhom/point_map.hpp"
#include "apxhom/random.hpp"

namespace apxhom::search {

// ---------------------------------------------------------------------------
// Automorphisms (single cyclic and elementary Abelian specs only).

inline bool is_single_cyclic(const GroupSpec& s) { return s.factor_count() == 1 && s.modulus(0) != 0; }

inline bool is_elementary_abelian(const GroupSpec& s) {
  if (s.factor_count() == 0 || !s.is_finite()) return false;
  auto p = s.modulus(0);
  if (!is_prime(p)) return false;
  return std::all_of(s.moduli().begin(), s.moduli().end(), [p](std::int64_t d) { return d == p; });
}

inline bool automorphisms_supported(const GroupSpec& s) { return is_single_cyclic(s) || is_elementary_abelian(s); }

/// One rank per Aut(H)-orbit (the smallest), or every rank when Aut(H) is not modelled.
inline std::vector<std::uint64_t> orbit_representatives(const GroupSpec& h) {
  std::vector<std::uint64_t> reps;
  if (is_single_cyclic(h)) {
    // Orbits of Z/n under units are {k : gcd(k, n) = g}; the smallest member is g.
    auto n = h.modulus(0);
    reps.push_back(0);
    for (std::int64_t g = 1; g < n; ++g)
      if (n % g == 0) reps.push_back(static_cast<std::uint64_t>(g));
    return reps;
  }
  if (is_elementary_abelian(h)) return {0, 1};
  reps.resize(h.order());
  std::iota(reps.begin(), reps.end(), std::uint64_t{0});
  return reps;
}

/// Uniformly random automorphism as a PointMap.
inline PointMap random_automorphism(const GroupSpec& s, Rng& rng) {
  if (is_single_cyclic(s)) {
    auto n = s.modulus(0);
    std::int64_t u;
    do u = rng.between(1, n - 1 > 0 ? n - 1 : 1);
    while (std::gcd(u, n) != 1);
    std::vector<GroupElement> t;
    for (std::int64_t x = 0; x < n; ++x) t.push_back(GroupElement{detail::mul_mod(u, x, n)});
    return PointMap(s, s, std::move(t));
  }
  if (is_elementary_abelian(s)) {
    auto p = s.modulus(0);
    auto m = s.factor_count();
    std::vector<std::vector<std::int64_t>> mat(m, std::vector<std::int64_t>(m));
    auto invertible = [&] {
      auto a = mat;
      for (std::size_t col = 0, row = 0; col < m; ++col, ++row) {
        std::size_t piv = row;
        while (piv < m && a[piv][col] == 0) ++piv;
        if (piv == m) return false;
        std::swap(a[piv], a[row]);
        std::int64_t inv = 1;
        for (std::int64_t k = 1; k < p; ++k)
          if (detail::mul_mod(a[row][col], k, p) == 1) inv = k;
        for (std::size_t r = 0; r < m; ++r) {
          if (r == row || a[r][col] == 0) continue;
          auto factor = detail::mul_mod(a[r][col], inv, p);
          for (std::size_t c = 0; c < m; ++c) a[r][c] = detail::mod_floor(a[r][c] - factor * a[row][c], p);
        }
      }
      return true;
    };
    do {
      for (auto& row : mat)
        for (auto& v : row) v = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(p)));
    } while (!invertible());
    std::vector<GroupElement> t;
    for (std::uint64_t k = 0; k < s.order(); ++k) {
      auto x = unrank(s, k);
      std::vector<std::int64_t> y(m, 0);
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) y[r] = (y[r] + mat[r][c] * x[c]) % p;
      t.emplace_back(std::move(y));
    }
    return PointMap(s, s, std::move(t));
  }
  throw std::invalid_argument("random_automorphism: only single cyclic and elementary Abelian specs are supported");
}

inline PointMap random_injection(const GroupSpec& g, const GroupSpec& h, Rng& rng) {
  if (g.order() > h.order()) throw std::invalid_argument("random_injection: |G| > |H|");
  auto vals = sample_distinct(rng, h.order(), g.order());
  std::vector<GroupElement> t;
  for (auto v : vals) t.push_back(unrank(h, v));
  return PointMap(g, h, std::move(t));
}

// ---------------------------------------------------------------------------

/// A mutable injection G -> H (codomain ranks) with its good-pair count,
/// maintained incrementally: changing f at a point x only affects pairs
/// (x, t), (t, x) and (t, x - t).
class AgreementState {
 public:
  AgreementState(const GroupSpec& g, const GroupSpec& h, std::vector<std::uint64_t> values)
      : g_(g), h_(h), dom_(g), cod_(h), values_(std::move(values)), used_(h.order(), false) {
    if (values_.size() != dom_.order()) throw std::invalid_argument("AgreementState: wrong table length");
    for (auto v : values_) {
      if (used_.at(v)) throw std::invalid_argument("AgreementState: table is not injective");
      used_[v] = true;
    }
    for (std::uint64_t v = 0; v < h.order(); ++v)
      if (!used_[v]) unused_.push_back(v);
    good_ = full_recount();
  }

  std::uint64_t good() const { return good_; }
  const std::vector<std::uint64_t>& values() const { return values_; }
  const std::vector<std::uint64_t>& unused() const { return unused_; }
  std::uint64_t domain_order() const { return dom_.order(); }

  std::uint64_t full_recount() const {
    std::uint64_t c = 0;
    const auto n = dom_.order();
    for (std::uint64_t a = 0; a < n; ++a)
      for (std::uint64_t b = 0; b < n; ++b) c += is_good(a, b);
    return c;
  }

  /// Swaps f(x) and f(y); returns the change in good pairs.
  std::int64_t apply_swap(std::uint64_t x, std::uint64_t y) {
    std::uint64_t pts[2] = {x, y};
    collect_affected(pts);
    auto before = count_affected();
    std::swap(values_[x], values_[y]);
    auto after = count_affected();
    good_ = good_ + after - before;
    return static_cast<std::int64_t>(after) - static_cast<std::int64_t>(before);
  }

  /// Sets f(x) to unused()[slot]; returns the change in good pairs.
  std::int64_t apply_reassign(std::uint64_t x, std::size_t slot) {
    std::uint64_t pts[1] = {x};
    collect_affected(pts);
    auto before = count_affected();
    auto old = values_[x];
    values_[x] = unused_.at(slot);
    used_[values_[x]] = true;
    used_[old] = false;
    unused_[slot] = old;
    auto after = count_affected();
    good_ = good_ + after - before;
    return static_cast<std::int64_t>(after) - static_cast<std::int64_t>(before);
  }

  PointMap to_map() const {
    std::vector<GroupElement> t;
    for (auto v : values_) t.push_back(unrank(h_, v));
    return PointMap(g_, h_, std::move(t));
  }

 private:
  bool is_good(std::uint64_t a, std::uint64_t b) const {
    return values_[dom_.add(a, b)] == cod_.add(values_[a], values_[b]);
  }

  template <std::size_t N>
  void collect_affected(const std::uint64_t (&pts)[N]) {
    const auto n = dom_.order();
    affected_.clear();
    for (auto x : pts)
      for (std::uint64_t t = 0; t < n; ++t) {
        affected_.push_back(x * n + t);
        affected_.push_back(t * n + x);
        affected_.push_back(t * n + dom_.sub(x, t));
      }
    std::sort(affected_.begin(), affected_.end());
    affected_.erase(std::unique(affected_.begin(), affected_.end()), affected_.end());
  }

  std::uint64_t count_affected() const {
    const auto n = dom_.order();
    std::uint64_t c = 0;
    for (auto key : affected_) c += is_good(key / n, key % n);
    return c;
  }

  GroupSpec g_, h_;
  DenseIndexer dom_, cod_;
  std::vector<std::uint64_t> values_;
  std::vector<bool> used_;
  std::vector<std::uint64_t> unused_;
  std::vector<std::uint64_t> affected_;
  std::uint64_t good_ = 0;
};

// ---------------------------------------------------------------------------

enum class Method { exhaustive, local };

inline const char* method_name(Method m) { return m == Method::exhaustive ? "exhaustive" : "local"; }

struct SearchResult {
  BigInt best_good_pairs;
  Rational best_probability;
  PointMap witness;
  std::uint64_t visited = 0;
  Method method = Method::exhaustive;
  std::vector<BoundReport> bound_context;
};

inline constexpr std::uint64_t kExhaustiveCandidateLimit = 100'000'000;

/// Number of injections the exhaustive search would enumerate after f(0) pruning.
inline BigInt exhaustive_candidate_count(const GroupSpec& g, const GroupSpec& h) {
  auto n = g.order();
  auto m = h.order();
  if (n > m) return 0;
  BigInt count = orbit_representatives(h).size();
  for (std::uint64_t i = 1; i < n; ++i) count *= (m - i);
  return count;
}

inline SearchResult exhaustive_max_agreement(const GroupSpec& g, const GroupSpec& h) {
  g.require_finite("exhaustive search");
  h.require_finite("exhaustive search");
  if (g.order() > h.order()) throw std::invalid_argument("exhaustive search needs |G| <= |H|");
  if (exhaustive_candidate_count(g, h) > kExhaustiveCandidateLimit)
    throw std::invalid_argument("exhaustive search: instance too large (" + exhaustive_candidate_count(g, h).str() +
                                " candidate injections > 10^8)");
  const DenseIndexer dom(g), cod(h);
  const std::uint64_t n = dom.order(), m = cod.order();

  // Pairs (a, b) become decided once the largest of a, b, a+b is assigned.
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> decided_at(n);
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b) decided_at[std::max({a, b, dom.add(a, b)})].emplace_back(a, b);
  std::vector<std::uint64_t> undecided_after(n, 0);
  for (std::uint64_t x = n; x-- > 0;)
    undecided_after[x] = (x + 1 < n ? undecided_after[x + 1] + decided_at[x + 1].size() : 0);

  struct Branch {
    std::int64_t best = -1;
    std::vector<std::uint64_t> witness;
    std::uint64_t visited = 0;
  };
  const auto roots = orbit_representatives(h);
  std::vector<Branch> branches(roots.size());

  auto run_branch = [&](std::size_t bi) {
    Branch& br = branches[bi];
    std::vector<std::uint64_t> vals(n, 0);
    std::vector<bool> used(m, false);
    auto gain_at = [&](std::uint64_t x) {
      std::uint64_t g_count = 0;
      for (auto [a, b] : decided_at[x]) g_count += vals[dom.add(a, b)] == cod.add(vals[a], vals[b]);
      return g_count;
    };
    auto dfs = [&](auto&& self, std::uint64_t x, std::uint64_t good) -> void {
      if (x == n) {
        if (static_cast<std::int64_t>(good) > br.best) {
          br.best = static_cast<std::int64_t>(good);
          br.witness = vals;
        }
        return;
      }
      for (std::uint64_t v = 0; v < m; ++v) {
        if (used[v]) continue;
        vals[x] = v;
        ++br.visited;
        auto now = good + gain_at(x);
        if (static_cast<std::int64_t>(now + undecided_after[x]) <= br.best) continue;
        used[v] = true;
        self(self, x + 1, now);
        used[v] = false;
      }
    };
    vals[0] = roots[bi];
    used[roots[bi]] = true;
    ++br.visited;
    dfs(dfs, 1, gain_at(0));
  };
  parallel_for_shards(
      roots.size(),
      [&](std::size_t begin, std::size_t end, std::size_t) {
        for (auto i = begin; i < end; ++i) run_branch(i);
      },
      1);

  std::size_t best_branch = 0;
  std::uint64_t visited = 0;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    visited += branches[i].visited;
    if (branches[i].best > branches[best_branch].best) best_branch = i;
  }
  const auto& win = branches[best_branch];
  std::vector<GroupElement> table;
  for (auto v : win.witness) table.push_back(unrank(h, v));
  BigInt total = BigInt(n) * n;
  return SearchResult{BigInt(win.best), Rational(BigInt(win.best), total), PointMap(g, h, std::move(table)), visited,
                      Method::exhaustive, {}};
}

struct LocalSearchOptions {
  std::uint64_t iterations = 100'000;
  std::uint64_t seed = 0;
  /// Iterations without strict improvement before restarting from a fresh random injection.
  std::uint64_t stall_limit = 0;  // 0 = max(1000, 20 |G|)
  std::optional<PointMap> warm_start;
};

/// Pure hill climbing (accepts non-worsening moves) with seeded restarts.
/// The best state seen is reported; ties keep the lexicographically smaller table.
inline SearchResult local_search_max_agreement(const GroupSpec& g, const GroupSpec& h, const LocalSearchOptions& opt) {
  g.require_finite("local search");
  h.require_finite("local search");
  if (g.order() > h.order()) throw std::invalid_argument("local search needs |G| <= |H|");
  Rng rng(opt.seed);
  const auto n = g.order();
  const auto m = h.order();
  const std::uint64_t stall_limit = opt.stall_limit ? opt.stall_limit : std::max<std::uint64_t>(1000, 20 * n);

  auto fresh = [&]() { return sample_distinct(rng, m, n); };
  std::vector<std::uint64_t> start;
  if (opt.warm_start) {
    const auto& w = *opt.warm_start;
    if (!(w.domain() == g) || !(w.codomain() == h) || !w.injective())
      throw std::invalid_argument("warm start must be an injection G -> H");
    for (const auto& v : w.table()) start.push_back(rank(h, v));
  } else {
    start = fresh();
  }
  AgreementState state(g, h, start);
  std::uint64_t best_good = state.good();
  std::vector<std::uint64_t> best_vals = state.values();
  std::uint64_t current_peak = state.good();
  std::uint64_t since_improvement = 0;
  std::uint64_t visited = 1;
  const std::uint64_t total_pairs = n * n;

  for (std::uint64_t it = 0; it < opt.iterations && best_good < total_pairs; ++it) {
    if (since_improvement >= stall_limit) {
      state = AgreementState(g, h, fresh());
      current_peak = state.good();
      since_improvement = 0;
    }
    ++visited;
    const bool reassign = !state.unused().empty() && (n < 2 || rng.coin());
    std::int64_t delta;
    if (reassign) {
      auto x = rng.below(n);
      auto slot = rng.below(state.unused().size());
      delta = state.apply_reassign(x, slot);
      // The displaced value now sits at `slot`, so the same move undoes it.
      if (delta < 0) state.apply_reassign(x, slot);
    } else if (n >= 2) {
      auto x = rng.below(n);
      auto y = rng.below(n - 1);
      if (y >= x) ++y;
      delta = state.apply_swap(x, y);
      if (delta < 0) state.apply_swap(x, y);
    } else {
      break;
    }
    if (state.good() > current_peak) {
      current_peak = state.good();
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
    if (state.good() > best_good || (state.good() == best_good && state.values() < best_vals)) {
      best_good = state.good();
      best_vals = state.values();
    }
  }

  std::vector<GroupElement> table;
  for (auto v : best_vals) table.push_back(unrank(h, v));
  return SearchResult{BigInt(best_good), Rational(BigInt(best_good), BigInt(total_pairs)),
                      PointMap(g, h, std::move(table)), visited, Method::local, {}};
}

struct BoundRow {
  BoundReport bound;
  std::optional<Rational> observed;
};

/// Bound expressions for r in [r_lo, r_hi] next to an observed agreement value.
/// The bound carries an unspecified multiplicative constant, so rows are context
/// for the observation, never a pass/fail comparison.
inline std::vector<BoundRow> bound_comparison_table(const GroupSpec& g, const GroupSpec& h, std::int64_t r_lo,
                                                    std::int64_t r_hi, std::optional<Rational> observed = {}) {
  if (r_lo < 1 || r_hi < r_lo) throw std::invalid_argument("bound_comparison_table: invalid r range");
  std::vector<BoundRow> rows;
  for (std::int64_t r = r_lo; r <= r_hi; ++r) rows.push_back({theorem_bound(g, h, r), observed});
  return rows;
}

}  // namespace apxhom::search
