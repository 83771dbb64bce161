#pragma once

// Constructive versions and exact checkers for the sumset lemmas behind the
// agreement bound. Every guarantee is evaluated as an integer inequality with
// all denominators cleared; nothing here uses floating point.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "apxhom/bounds.hpp"
#include "apxhom/element_set.hpp"
#include "apxhom/point_map.hpp"
#include "apxhom/rational.hpp"
#include "apxhom/setops.hpp"

namespace apxhom::lab {

enum class Relation { le, lt, ge, eq };

inline const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::le: return "<=";
    case Relation::lt: return "<";
    case Relation::ge: return ">=";
    case Relation::eq: return "==";
  }
  return "?";
}

/// One named integer comparison `lhs relation rhs`.
struct Inequality {
  std::string name;
  BigInt lhs;
  BigInt rhs;
  Relation relation = Relation::le;

  bool holds() const {
    switch (relation) {
      case Relation::le: return lhs <= rhs;
      case Relation::lt: return lhs < rhs;
      case Relation::ge: return lhs >= rhs;
      case Relation::eq: return lhs == rhs;
    }
    return false;
  }
};

struct CheckReport {
  std::string checker;
  std::vector<Inequality> checks;

  void add(std::string name, BigInt lhs, Relation rel, BigInt rhs) {
    checks.push_back({std::move(name), std::move(lhs), std::move(rhs), rel});
  }
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Inequality& i) { return i.holds(); });
  }
  std::vector<Inequality> violations() const {
    std::vector<Inequality> out;
    for (const auto& c : checks)
      if (!c.holds()) out.push_back(c);
    return out;
  }
  const Inequality& find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    throw std::out_of_range("no check named " + name);
  }
};

/// Raised when a step that the construction guarantees cannot fail does fail.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline BigInt big(std::size_t v) { return BigInt(v); }

// ---------------------------------------------------------------------------
// Claim A: for X, B inside a set Gamma in G x H on which both projections are
// injective,  |X + r.B| / |X| >= |B| / (|K_{H,r}| |r.G|).

inline CheckReport claim_a_check(const GroupSpec& g, const GroupSpec& h, const ElementSet& gamma,
                                 const ElementSet& x, const ElementSet& b, std::int64_t r) {
  if (r < 1) throw std::invalid_argument("claim_a_check: r must be positive");
  g.require_finite("claim_a_check");
  h.require_finite("claim_a_check");
  auto product = direct_product(g, h);
  if (!(gamma.spec() == product)) throw std::invalid_argument("claim_a_check: Gamma does not live in G x H");
  require_same_spec(gamma, x);
  require_same_spec(gamma, b);
  if (x.is_empty()) throw std::invalid_argument("claim_a_check: X is empty");
  if (b.is_empty()) throw std::invalid_argument("claim_a_check: B is empty");
  if (!x.is_subset_of(gamma) || !b.is_subset_of(gamma))
    throw std::invalid_argument("claim_a_check: X and B must be subsets of Gamma");
  if (!projections_injective(gamma, g.factor_count()))
    throw std::invalid_argument("claim_a_check: a coordinate projection is not injective on Gamma");

  const auto rb = dilate(r, b);
  const auto sum = sumset(x, rb);
  const BigInt kernel_h = kernel_order(h, r);
  const BigInt image_g = dilate_order(g, r);

  CheckReport rep;
  rep.checker = "claim_a";
  // |X + r.B| |K_{H,r}| |r.G| >= |B| |X|
  rep.add("doubling_lower_bound", big(sum.size()) * kernel_h * image_g, Relation::ge, big(b.size()) * big(x.size()));

  // Enumerate Q = {(x, y, z, w) in X x rB x X x rB : x + y = z + w} bucketed by
  // the common sum, and push each quadruple through
  //   psi(x, y, z, w) = (x, y, pi_G(z) - pi_G(x)).
  DenseIndexer ix(product);
  DenseIndexer gx(g);
  const std::uint64_t g_order = g.order();
  auto xr = x.ranks();
  auto yr = rb.ranks();
  std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint64_t, std::uint64_t>>> by_sum;
  for (auto u : xr)
    for (auto v : yr) by_sum[ix.add(u, v)].emplace_back(u, v);
  const auto rg = dilate_image(g, r);
  std::uint64_t q_count = 0;
  bool psi_lands_in_rg = true;
  bool psi_injective = true;
  std::vector<std::uint64_t> fibre;
  for (const auto& [s, pairs] : by_sum) {
    q_count += static_cast<std::uint64_t>(pairs.size()) * pairs.size();
    for (const auto& [xa, ya] : pairs) {
      // Fixed (x, y): the third psi coordinate must separate all z.
      fibre.clear();
      for (const auto& [zc, wc] : pairs) {
        auto diff = gx.sub(zc % g_order, xa % g_order);
        if (!rg.contains_rank(diff)) psi_lands_in_rg = false;
        fibre.push_back(diff);
      }
      std::sort(fibre.begin(), fibre.end());
      if (std::adjacent_find(fibre.begin(), fibre.end()) != fibre.end()) psi_injective = false;
    }
  }
  const std::uint64_t energy = additive_energy(x, rb);
  rep.add("energy_matches_quadruple_count", BigInt(q_count), Relation::eq, BigInt(energy));
  rep.add("psi_lands_in_rG", BigInt(psi_lands_in_rg ? 1 : 0), Relation::eq, BigInt(1));
  rep.add("psi_injective", BigInt(psi_injective ? 1 : 0), Relation::eq, BigInt(1));
  // |Q| <= |X| |r.B| |r.G|
  rep.add("energy_upper_bound", BigInt(q_count), Relation::le, big(x.size()) * big(rb.size()) * image_g);
  // Cauchy-Schwarz: |Q| |X + r.B| >= |X|^2 |r.B|^2
  rep.add("cauchy_schwarz", BigInt(q_count) * big(sum.size()), Relation::ge,
          big(x.size()) * big(x.size()) * big(rb.size()) * big(rb.size()));
  // |r.G| |X + r.B| >= |r.B| |X|
  rep.add("image_vs_dilate", image_g * big(sum.size()), Relation::ge, big(rb.size()) * big(x.size()));
  // |r.B| >= |pi_H(r.B)| = |r.pi_H(B)| >= |pi_H(B)| / |K_{H,r}|
  std::vector<GroupElement> proj_b, proj_rb;
  for (const auto& e : b.elements()) proj_b.push_back(slice(e, g.factor_count(), h.factor_count()));
  for (const auto& e : rb.elements()) proj_rb.push_back(slice(e, g.factor_count(), h.factor_count()));
  auto pi_b = ElementSet::from_elements(h, proj_b);
  auto pi_rb = ElementSet::from_elements(h, proj_rb);
  auto r_pi_b = dilate(r, pi_b);
  rep.add("projection_shrinks", big(rb.size()), Relation::ge, big(pi_rb.size()));
  rep.add("projection_commutes_with_dilation", big(pi_rb.size()), Relation::eq, big(r_pi_b.size()));
  rep.add("dilation_kernel_bound", big(r_pi_b.size()) * kernel_h, Relation::ge, big(pi_b.size()));
  return rep;
}

// ---------------------------------------------------------------------------
// |X + r.A| <= K^{floor(log2 r)} |X + A| with K = |Y - A - 2.A| / |Y|, Y in A.

inline CheckReport bukh_check(const ElementSet& a, const ElementSet& x, const ElementSet& y, std::int64_t r) {
  if (r < 1) throw std::invalid_argument("bukh_check: r must be positive");
  require_same_spec(a, x);
  require_same_spec(a, y);
  if (y.is_empty()) throw std::invalid_argument("bukh_check: Y is empty");
  if (!y.is_subset_of(a)) throw std::invalid_argument("bukh_check: Y must be a subset of A");

  const auto a_2a = sumset(a, dilate(2, a));
  const auto ya = difference(y, a_2a);  // Y - A - 2.A
  const int k = floor_log2(r);
  const BigInt kn = pow_big(big(ya.size()), static_cast<std::uint64_t>(k));
  const BigInt kd = pow_big(big(y.size()), static_cast<std::uint64_t>(k));

  const auto x_a = sumset(x, a);
  const auto x_ra = sumset(x, dilate(r, a));

  CheckReport rep;
  rep.checker = "bukh";
  rep.add("conclusion", big(x_ra.size()) * kd, Relation::le, kn * big(x_a.size()));

  // Partial sums X + A + 2.A + ... + 2^j.A, and the binary digits of r.
  ElementSet chain = x_a;
  ElementSet digits = x;
  ElementSet power = a;  // 2^i.A
  for (int i = 0; i <= k; ++i) {
    if (i > 0) {
      power = dilate(2, power);
      chain = sumset(chain, power);
      rep.add("partial_sum_" + std::to_string(i),
              big(chain.size()) * pow_big(big(y.size()), static_cast<std::uint64_t>(i)), Relation::le,
              pow_big(big(ya.size()), static_cast<std::uint64_t>(i)) * big(x_a.size()));
    }
    if ((r >> i) & 1) digits = sumset(digits, power);
  }
  rep.add("dilate_within_binary_digits", big(x_ra.size()), Relation::le, big(digits.size()));
  rep.add("digits_within_full_chain", big(digits.size()), Relation::le, big(chain.size()));
  rep.add("dilate_subset_of_digit_sum", BigInt(x_ra.is_subset_of(digits) ? 1 : 0), Relation::eq, BigInt(1));
  return rep;
}

// ---------------------------------------------------------------------------
// Petridis minimiser: nonempty Z in Y minimising |Z - A - 2.A| / |Z|.

inline constexpr std::size_t kPetridisMaxY = 14;

struct PetridisResult {
  ElementSet z;
  std::size_t growth = 0;  // |Z - A - 2.A|
  std::size_t z_size = 0;
  Rational ratio;
  std::uint64_t subsets_scanned = 0;
};

/// -A - 2.A, the summand that Z is measured against.
inline ElementSet petridis_summand(const ElementSet& a) { return negate(sumset(a, dilate(2, a))); }

/// Exhaustive over all nonempty subsets of Y. Ties: smaller |Z|, then the
/// lexicographically first index list in Y's canonical order.
inline PetridisResult petridis_minimizer(const ElementSet& y, const ElementSet& a) {
  require_same_spec(y, a);
  if (y.is_empty()) throw std::invalid_argument("petridis_minimizer: Y is empty");
  if (y.size() > kPetridisMaxY)
    throw std::invalid_argument("petridis_minimizer: |Y| = " + std::to_string(y.size()) + " exceeds " +
                                std::to_string(kPetridisMaxY));
  const auto w = petridis_summand(a);
  const auto elems = y.elements();
  std::vector<ElementSet> translates;
  for (const auto& e : elems) translates.push_back(translate(w, e));

  std::vector<std::size_t> current, best_idx;
  std::size_t best_growth = 0, best_size = 0;
  std::uint64_t scanned = 0;
  // Depth-first in lexicographic order of index lists.
  std::function<void(std::size_t, const ElementSet*)> extend = [&](std::size_t start, const ElementSet* acc) {
    for (std::size_t i = start; i < elems.size(); ++i) {
      ElementSet next = acc ? unite(*acc, translates[i]) : translates[i];
      current.push_back(i);
      ++scanned;
      std::size_t growth = next.size();
      std::size_t size = current.size();
      bool better = best_idx.empty();
      if (!better) {
        auto lhs = static_cast<unsigned __int128>(growth) * best_size;
        auto rhs = static_cast<unsigned __int128>(best_growth) * size;
        better = lhs < rhs || (lhs == rhs && size < best_size);
      }
      if (better) {
        best_idx = current;
        best_growth = growth;
        best_size = size;
      }
      extend(i + 1, &next);
      current.pop_back();
    }
  };
  extend(0, nullptr);

  std::vector<GroupElement> chosen;
  for (auto i : best_idx) chosen.push_back(elems[i]);
  PetridisResult res;
  res.z = ElementSet::from_elements(y.spec(), chosen, y.storage());
  res.growth = best_growth;
  res.z_size = best_size;
  res.ratio = Rational(best_growth, best_size);
  res.subsets_scanned = scanned;
  return res;
}

/// |Z - A - 2.A + C| <= (|Z - A - 2.A| / |Z|) |Z + C|, cleared of the denominator.
inline CheckReport petridis_check(const PetridisResult& min, const ElementSet& a, const ElementSet& c) {
  require_same_spec(min.z, c);
  const auto w = petridis_summand(a);
  const auto zw = sumset(min.z, w);
  const auto zwc = sumset(zw, c);
  const auto zc = sumset(min.z, c);
  CheckReport rep;
  rep.checker = "petridis";
  rep.add("growth_recomputed", big(zw.size()), Relation::eq, big(min.growth));
  rep.add("petridis_conclusion", big(zwc.size()) * big(min.z_size), Relation::le, big(min.growth) * big(zc.size()));
  return rep;
}

// ---------------------------------------------------------------------------

/// |2^{k-1}.(Z - A - 2.A)| |K| = |Z - A - 2.A + K| with K = K_{G, 2^{k-1}}, and the
/// same identity for Z itself.
inline CheckReport kernel_quotient_identity_check(const ElementSet& z, const ElementSet& a, int k) {
  require_same_spec(z, a);
  if (k < 1 || k > 62) throw std::invalid_argument("kernel_quotient_identity_check: k must be in [1, 62]");
  z.spec().require_finite("kernel_quotient_identity_check");
  const std::int64_t m = std::int64_t{1} << (k - 1);
  const auto kernel = kernel_subgroup(z.spec(), m);
  const auto d = sumset(z, petridis_summand(a));
  CheckReport rep;
  rep.checker = "kernel_quotient";
  rep.add("dilate_equals_coset_count", big(dilate(m, d).size()) * big(kernel.size()), Relation::eq,
          big(sumset(d, kernel).size()));
  rep.add("dilate_equals_coset_count_Z", big(dilate(m, z).size()) * big(kernel.size()), Relation::eq,
          big(sumset(z, kernel).size()));
  return rep;
}

/// |V| |U + W| <= |U + V| |-V + W|.
inline CheckReport ruzsa_triangle_check(const ElementSet& u, const ElementSet& v, const ElementSet& w) {
  require_same_spec(u, v);
  require_same_spec(u, w);
  if (v.is_empty()) throw std::invalid_argument("ruzsa_triangle_check: V is empty");
  CheckReport rep;
  rep.checker = "ruzsa";
  rep.add("ruzsa_triangle", big(v.size()) * big(sumset(u, w).size()), Relation::le,
          big(sumset(u, v).size()) * big(difference(w, v).size()));
  return rep;
}

// ---------------------------------------------------------------------------
// Symmetric Balog-Szemeredi-Gowers construction.

/// The popularity constant c.
inline const Rational kBsgConstant{1, 18};

struct BsgCertificate {
  bool symmetric = false;         // x0 - T = T
  bool subset = false;            // T in S
  bool u_large = false;           // 2 |U|^2 |S|^2 >= t^2, i.e. |U| >= (eps / sqrt 2) |S|
  bool popular_pairs = false;     // #{(y,z) in U^2 : p > c eps^2} >= (1 - 2c) |U|^2
  bool r_large = false;           // 3 |R| >= 2 |U|
  bool t_large = false;           // 3 |T| >= |U|
  bool difference_bound = false;  // |T - T| (|U|/3) (c eps^2)^2 |S|^2 <= |S|^4
  bool all() const { return symmetric && subset && u_large && popular_pairs && r_large && t_large && difference_bound; }
};

struct BsgOutput {
  ElementSet t;
  GroupElement x0;
  std::size_t u_size = 0;
  Rational epsilon;
  BsgCertificate certified;
  CheckReport checks;
};

struct BsgTrace {
  GroupElement chosen_x;
  /// S in rank order; p_numerators is |S| x |S| row-major over this order, and
  /// p(y, z) = p_numerators[y][z] / p_denominator (zero off S x S).
  std::vector<GroupElement> support;
  std::vector<std::uint64_t> p_numerators;
  std::uint64_t p_denominator = 0;
  std::size_t r_size = 0;
  Rational c = kBsgConstant;
  std::size_t candidates_scanned = 0;
};

struct BsgResult {
  BsgOutput output;
  BsgTrace trace;
};

inline BsgResult bsg_symmetric(const ElementSet& s) {
  if (s.is_empty()) throw std::invalid_argument("bsg_symmetric: S is empty");
  s.spec().require_finite("bsg_symmetric");
  const DenseIndexer ix(s.spec());
  const auto ranks = s.ranks();
  const std::size_t n = ranks.size();
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(ranks[i], i);
  auto index_of = [&](std::uint64_t k) -> std::ptrdiff_t {
    auto it = index.find(k);
    return it == index.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
  };

  // U_x = S n (x - S) for each x in S, as index lists; P(y, z) = #{x : y, z in U_x}.
  std::vector<std::vector<std::size_t>> u_of(n);
  std::vector<std::uint64_t> p(n * n, 0);
  std::uint64_t triples = 0;
  for (std::size_t xi = 0; xi < n; ++xi) {
    for (std::size_t yi = 0; yi < n; ++yi)
      if (index_of(ix.sub(ranks[xi], ranks[yi])) >= 0) u_of[xi].push_back(yi);
    triples += u_of[xi].size();
    for (auto yi : u_of[xi])
      for (auto zi : u_of[xi]) ++p[yi * n + zi];
  }
  // sum_x |U_x| counts pairs (y, x - y) in S^2 summing to x in S.
  if (triples == 0) throw std::invalid_argument("bsg_symmetric: S has no additive triples (epsilon = 0)");

  const BigInt t(triples);
  const BigInt sz(n);
  const BigInt t2 = t * t;
  // p(y,z) > c eps^2  <=>  P / |S| > t^2 / (18 |S|^4)  <=>  18 P |S|^3 > t^2.
  const BigInt popular_floor = t2 / (18 * sz * sz * sz);
  const auto popular_cut = popular_floor.convert_to<std::uint64_t>();
  auto popular = [&](std::size_t yi, std::size_t zi) { return p[yi * n + zi] > popular_cut; };

  std::ptrdiff_t chosen = -1;
  std::size_t scanned = 0;
  std::uint64_t chosen_popular = 0;
  for (std::size_t xi = 0; xi < n; ++xi) {
    ++scanned;
    const auto& u = u_of[xi];
    const BigInt us(u.size());
    if (2 * us * us * sz * sz < t2) continue;
    std::uint64_t pop = 0;
    for (auto yi : u)
      for (auto zi : u) pop += popular(yi, zi);
    if (9 * BigInt(pop) < 8 * us * us) continue;
    chosen = static_cast<std::ptrdiff_t>(xi);
    chosen_popular = pop;
    break;
  }
  if (chosen < 0) {
    std::ostringstream dump;
    dump << "bsg_symmetric: no x in S satisfies both selection conditions; |S| = " << n << ", triples = " << triples
         << ", S ranks =";
    for (auto k : ranks) dump << ' ' << k;
    throw InternalConsistencyError(dump.str());
  }

  const auto xi = static_cast<std::size_t>(chosen);
  const auto& u = u_of[xi];
  std::vector<bool> in_r(n, false);
  std::size_t r_size = 0;
  for (auto yi : u) {
    std::size_t cnt = 0;
    for (auto zi : u) cnt += popular(yi, zi);
    if (3 * cnt >= 2 * u.size()) {
      in_r[yi] = true;
      ++r_size;
    }
  }
  std::vector<std::uint64_t> t_ranks;
  for (auto yi : u) {
    if (!in_r[yi]) continue;
    auto mirror = index_of(ix.sub(ranks[xi], ranks[yi]));
    if (mirror >= 0 && in_r[static_cast<std::size_t>(mirror)]) t_ranks.push_back(ranks[yi]);
  }

  BsgResult res;
  auto& out = res.output;
  out.t = ElementSet::from_ranks(s.spec(), t_ranks, s.storage());
  out.x0 = unrank(s.spec(), ranks[xi]);
  out.u_size = u.size();
  out.epsilon = Rational(t, sz * sz);

  std::vector<GroupElement> mirrored;
  for (const auto& e : out.t.elements()) mirrored.push_back(sub(s.spec(), out.x0, e));
  const auto x0_minus_t = ElementSet::from_elements(s.spec(), mirrored, s.storage());
  const BigInt us(u.size());
  const auto t_minus_t = difference(out.t, out.t);

  auto& rep = out.checks;
  rep.checker = "bsg";
  rep.add("x0_minus_T_equals_T", BigInt(x0_minus_t == out.t ? 1 : 0), Relation::eq, BigInt(1));
  rep.add("T_subset_S", BigInt(out.t.is_subset_of(s) ? 1 : 0), Relation::eq, BigInt(1));
  rep.add("U_large", 2 * us * us * sz * sz, Relation::ge, t2);
  rep.add("popular_pairs", 9 * BigInt(chosen_popular), Relation::ge, 8 * us * us);
  rep.add("R_large", 3 * big(r_size), Relation::ge, 2 * us);
  rep.add("T_large", 3 * big(out.t.size()), Relation::ge, us);
  // |T-T| (|U|/3) (c eps^2)^2 |S|^2 <= |S|^4  <=>  |T-T| |U| t^4 <= 972 |S|^10.
  rep.add("difference_bound", big(t_minus_t.size()) * us * t2 * t2, Relation::le, 972 * pow_big(sz, 10));

  auto& cert = out.certified;
  cert.symmetric = rep.checks[0].holds();
  cert.subset = rep.checks[1].holds();
  cert.u_large = rep.checks[2].holds();
  cert.popular_pairs = rep.checks[3].holds();
  cert.r_large = rep.checks[4].holds();
  cert.t_large = rep.checks[5].holds();
  cert.difference_bound = rep.checks[6].holds();

  auto& tr = res.trace;
  tr.chosen_x = out.x0;
  for (auto k : ranks) tr.support.push_back(unrank(s.spec(), k));
  tr.p_numerators = std::move(p);
  tr.p_denominator = n;
  tr.r_size = r_size;
  tr.candidates_scanned = scanned;
  return res;
}

// ---------------------------------------------------------------------------
// Dilation can destroy small doubling: in (Z/4)^d x Z take
//   A = (Z/4)^d x {0}  u  {0}^d x {1, ..., 2^d},   B = {0, 1}^d x {0}.

inline constexpr int kCounterexampleMaxD = 8;

struct CounterexampleStats {
  int d = 0;
  std::size_t size_a = 0;
  std::size_t size_2a = 0;
  std::size_t size_a_plus_b = 0;
  std::size_t size_2a_plus_2b = 0;
  Rational ratio_sum;     // |A + B| / |A|
  Rational ratio_dilate;  // |2.A + 2.B| / |2.A|
  CheckReport checks;
};

struct CounterexampleSets {
  GroupSpec spec;
  ElementSet a;
  ElementSet b;
};

inline CounterexampleSets counterexample_sets(int d) {
  if (d < 0 || d > kCounterexampleMaxD)
    throw std::invalid_argument("counterexample_family: d must be in [0, " + std::to_string(kCounterexampleMaxD) + "]");
  std::vector<std::int64_t> moduli(static_cast<std::size_t>(d), 4);
  moduli.push_back(0);
  GroupSpec spec(moduli);
  const std::int64_t two_d = std::int64_t{1} << d;
  std::vector<GroupElement> a, b;
  std::int64_t cube = std::int64_t{1} << (2 * d);
  for (std::int64_t k = 0; k < cube; ++k) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(d) + 1, 0);
    for (int i = 0; i < d; ++i) c[i] = (k >> (2 * i)) & 3;
    a.emplace_back(c);
  }
  for (std::int64_t z = 1; z <= two_d; ++z) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(d) + 1, 0);
    c[d] = z;
    a.emplace_back(c);
  }
  for (std::int64_t k = 0; k < two_d; ++k) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(d) + 1, 0);
    for (int i = 0; i < d; ++i) c[i] = (k >> i) & 1;
    b.emplace_back(c);
  }
  return {spec, ElementSet::from_elements(spec, a, Storage::sparse), ElementSet::from_elements(spec, b, Storage::sparse)};
}

inline CounterexampleStats counterexample_family(int d) {
  auto sets = counterexample_sets(d);
  const auto a2 = dilate(2, sets.a);
  const auto b2 = dilate(2, sets.b);
  CounterexampleStats st;
  st.d = d;
  st.size_a = sets.a.size();
  st.size_2a = a2.size();
  st.size_a_plus_b = sumset(sets.a, sets.b).size();
  st.size_2a_plus_2b = sumset(a2, b2).size();
  st.ratio_sum = Rational(st.size_a_plus_b, st.size_a);
  st.ratio_dilate = Rational(st.size_2a_plus_2b, st.size_2a);

  const BigInt two_d = BigInt(1) << d;
  const BigInt four_d = two_d * two_d;
  auto& rep = st.checks;
  rep.checker = "counterexample";
  rep.add("size_A", big(st.size_a), Relation::eq, four_d + two_d);
  rep.add("size_2A", big(st.size_2a), Relation::eq, 2 * two_d);
  rep.add("size_A_plus_B", big(st.size_a_plus_b), Relation::eq, 2 * four_d);
  rep.add("size_2A_plus_2B", big(st.size_2a_plus_2b), Relation::eq, four_d + two_d);
  // |A + B| <= 2 |A|;  2 |2.A + 2.B| >= 2^d |2.A|  (ratio >= 2^{d-1})
  rep.add("sum_ratio_at_most_2", big(st.size_a_plus_b), Relation::le, 2 * big(st.size_a));
  rep.add("dilate_ratio_at_least_2^(d-1)", 2 * big(st.size_2a_plus_2b), Relation::ge, two_d * big(st.size_2a));
  return st;
}

}  // namespace apxhom::lab
