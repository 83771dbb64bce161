#pragma once

// Maps f : G -> H out of a finite group, their graphs in G x H, the exact
// agreement probability P(f(x+y) = f(x) + f(y)), and the two explicit
// constructions: the binary embedding of the cube into Z/p and the centred
// unwrapping Z/p -> Z -> Z/q.

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "apxhom/element_set.hpp"
#include "apxhom/parallel.hpp"
#include "apxhom/rational.hpp"
#include "apxhom/setops.hpp"

namespace apxhom {

enum class Recipe { table, identity, binary_embedding, centered_representatives, centered_unwrap };

inline const char* recipe_name(Recipe r) {
  switch (r) {
    case Recipe::table: return "table";
    case Recipe::identity: return "identity";
    case Recipe::binary_embedding: return "binary";
    case Recipe::centered_representatives: return "centered_representatives";
    case Recipe::centered_unwrap: return "unwrap";
  }
  return "table";
}

/// Which recipe built a map, and with which parameters (e.g. {n, p} or {p, q}).
struct Provenance {
  Recipe recipe = Recipe::table;
  std::vector<std::int64_t> params;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// A total map from a finite group, stored as a rank-indexed table of codomain elements.
class PointMap {
 public:
  PointMap(GroupSpec domain, GroupSpec codomain, std::vector<GroupElement> table, Provenance provenance = {})
      : domain_(std::move(domain)), codomain_(std::move(codomain)), provenance_(std::move(provenance)) {
    domain_.require_finite("PointMap domain");
    if (table.size() != domain_.order())
      throw std::invalid_argument("map table has " + std::to_string(table.size()) + " entries, domain has " +
                                  std::to_string(domain_.order()) + " elements");
    table_.reserve(table.size());
    for (auto& v : table)
      table_.push_back(make_element(codomain_, std::vector<std::int64_t>(v.coords().begin(), v.coords().end())));
    std::set<GroupElement> seen(table_.begin(), table_.end());
    injective_ = seen.size() == table_.size();
  }

  const GroupSpec& domain() const { return domain_; }
  const GroupSpec& codomain() const { return codomain_; }
  const std::vector<GroupElement>& table() const { return table_; }
  const Provenance& provenance() const { return provenance_; }
  bool injective() const { return injective_; }

  const GroupElement& at_rank(std::uint64_t k) const { return table_.at(k); }
  const GroupElement& operator()(const GroupElement& x) const { return table_.at(rank(domain_, x)); }

  friend bool operator==(const PointMap& a, const PointMap& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.table_ == b.table_;
  }

 private:
  GroupSpec domain_;
  GroupSpec codomain_;
  std::vector<GroupElement> table_;
  Provenance provenance_;
  bool injective_ = false;
};

struct AgreementReport {
  BigInt good_pairs;
  BigInt total_pairs;
  Rational probability;
  double as_float = 0.0;
};

/// Number of ordered pairs (a, b) in G^2 with f(a+b) = f(a) + f(b). Exact, rank-sharded.
inline std::uint64_t count_good_pairs(const PointMap& f) {
  const auto& g = f.domain();
  const auto& h = f.codomain();
  DenseIndexer dom(g);
  auto n = dom.order();
  if (h.is_finite() && h.order_exact() < (BigInt(1) << 62)) {
    DenseIndexer cod(h);
    std::vector<std::uint64_t> image(n);
    for (std::uint64_t k = 0; k < n; ++k) image[k] = rank(h, f.at_rank(k));
    return parallel_count(
        n,
        [&](std::size_t a) {
          std::uint64_t c = 0;
          for (std::uint64_t b = 0; b < n; ++b) c += image[dom.add(a, b)] == cod.add(image[a], image[b]);
          return c;
        },
        16);
  }
  return parallel_count(
      n,
      [&](std::size_t a) {
        std::uint64_t c = 0;
        for (std::uint64_t b = 0; b < n; ++b)
          c += f.at_rank(dom.add(a, b)) == add(h, f.at_rank(a), f.at_rank(b));
        return c;
      },
      16);
}

inline AgreementReport agreement_probability(const PointMap& f) {
  AgreementReport r;
  r.good_pairs = count_good_pairs(f);
  r.total_pairs = BigInt(f.domain().order()) * f.domain().order();
  r.probability = Rational(r.good_pairs, r.total_pairs);
  r.as_float = to_double(r.probability);
  return r;
}

/// Gamma = {(x, f(x))} inside domain x codomain.
inline ElementSet graph_of(const PointMap& f) {
  auto spec = direct_product(f.domain(), f.codomain());
  std::vector<GroupElement> pts;
  pts.reserve(f.table().size());
  for (std::uint64_t k = 0; k < f.table().size(); ++k) pts.push_back(join(unrank(f.domain(), k), f.at_rank(k)));
  return ElementSet::from_elements(spec, std::move(pts));
}

/// Whether both coordinate projections are injective on a set living in G x H,
/// where G occupies the first `left_factors` coordinates.
inline bool projections_injective(const ElementSet& gamma, std::size_t left_factors) {
  auto total = gamma.spec().factor_count();
  std::set<GroupElement> left, right;
  for (const auto& e : gamma.elements()) {
    if (!left.insert(slice(e, 0, left_factors)).second) return false;
    if (!right.insert(slice(e, left_factors, total - left_factors)).second) return false;
  }
  return true;
}

inline PointMap identity_map(const GroupSpec& spec) {
  std::vector<GroupElement> t;
  for (std::uint64_t k = 0; k < spec.order(); ++k) t.push_back(unrank(spec, k));
  return PointMap(spec, spec, std::move(t), {Recipe::identity, {}});
}

/// g o f; requires f's codomain to be g's domain.
inline PointMap compose(const PointMap& g, const PointMap& f) {
  if (!(f.codomain() == g.domain())) throw std::invalid_argument("compose: codomain/domain mismatch");
  std::vector<GroupElement> t;
  for (const auto& v : f.table()) t.push_back(g(v));
  return PointMap(f.domain(), g.codomain(), std::move(t));
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d <= n / d; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::int64_t next_prime_above(std::int64_t n) {
  std::int64_t p = n + 1;
  while (!is_prime(p)) ++p;
  return p;
}

/// (x_1, ..., x_n) -> x_1 + 2 x_2 + ... + 2^{n-1} x_n in Z/p, injective for p > 2^n.
inline PointMap binary_embedding(int n, std::int64_t p) {
  if (n < 1 || n > 24) throw std::invalid_argument("binary_embedding: n must be in [1, 24]");
  if (!is_prime(p)) throw std::invalid_argument("binary_embedding: p = " + std::to_string(p) + " is not prime");
  if (p <= (std::int64_t{1} << n))
    throw std::invalid_argument("binary_embedding: need p > 2^n for injectivity (p = " + std::to_string(p) + ")");
  GroupSpec domain(std::vector<std::int64_t>(n, 2));
  GroupSpec codomain{p};
  std::vector<GroupElement> t;
  auto size = domain.order();
  t.reserve(size);
  // With every factor equal to 2, the mixed-radix rank is exactly sum 2^{i-1} x_i.
  for (std::uint64_t k = 0; k < size; ++k) t.push_back(GroupElement{static_cast<std::int64_t>(k)});
  return PointMap(domain, codomain, std::move(t), {Recipe::binary_embedding, {n, p}});
}

/// f(x) + f(y) - f(x+y) for a binary embedding; equals sum_i 2^i x_i y_i mod p.
inline GroupElement carry_defect(const PointMap& f, const GroupElement& x, const GroupElement& y) {
  if (f.provenance().recipe != Recipe::binary_embedding)
    throw std::invalid_argument("carry_defect requires a map built by binary_embedding");
  const auto& h = f.codomain();
  return sub(h, add(h, f(x), f(y)), f(add(f.domain(), x, y)));
}

/// Z/p -> Z sending x + pZ to its representative in (-p/2, p/2].
inline PointMap centered_representatives(std::int64_t p) {
  if (p < 2) throw std::invalid_argument("centered_representatives: p must be >= 2");
  std::vector<GroupElement> t;
  for (std::int64_t x = 0; x < p; ++x) t.push_back(GroupElement{2 * x <= p ? x : x - p});
  return PointMap(GroupSpec{p}, GroupSpec{0}, std::move(t), {Recipe::centered_representatives, {p}});
}

/// Post-composes a map into Z^k with the natural projection Z^k -> target.
inline PointMap project_codomain(const PointMap& f, const GroupSpec& target) {
  for (auto d : f.codomain().moduli())
    if (d != 0) throw std::invalid_argument("project_codomain: source codomain must be free");
  if (target.factor_count() != f.codomain().factor_count())
    throw std::invalid_argument("project_codomain: factor count mismatch");
  std::vector<GroupElement> t;
  for (const auto& v : f.table())
    t.push_back(make_element(target, std::vector<std::int64_t>(v.coords().begin(), v.coords().end())));
  return PointMap(f.domain(), target, std::move(t));
}

/// Centred unwrapping Z/p -> Z followed by projection Z -> Z/q.
inline PointMap centered_unwrap(std::int64_t p, std::int64_t q) {
  if (p < 3 || p % 2 == 0 || !is_prime(p))
    throw std::invalid_argument("centered_unwrap: p = " + std::to_string(p) + " must be an odd prime");
  if (!is_prime(q)) throw std::invalid_argument("centered_unwrap: q = " + std::to_string(q) + " is not prime");
  if (q <= p) throw std::invalid_argument("centered_unwrap: need q > p");
  auto projected = project_codomain(centered_representatives(p), GroupSpec{q});
  return PointMap(projected.domain(), projected.codomain(), projected.table(), {Recipe::centered_unwrap, {p, q}});
}

}  // namespace apxhom
