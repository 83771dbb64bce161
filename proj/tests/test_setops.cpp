#include <gtest/gtest.h>

#include <map>
#include <set>

#include "apxhom/random.hpp"
#include "apxhom/setops.hpp"

using namespace apxhom;

namespace {

ElementSet make_set(const GroupSpec& g, std::initializer_list<GroupElement> elems) {
  return ElementSet::from_elements(g, std::vector<GroupElement>(elems));
}

ElementSet cyclic_set(std::int64_t n, std::initializer_list<std::int64_t> xs) {
  std::vector<GroupElement> e;
  for (auto x : xs) e.push_back(GroupElement{x});
  return ElementSet::from_elements(GroupSpec{n}, e);
}

// Reference implementations on plain element vectors.
std::set<GroupElement> naive_sumset(const ElementSet& a, const ElementSet& b) {
  std::set<GroupElement> out;
  for (const auto& x : a.elements())
    for (const auto& y : b.elements()) out.insert(add(a.spec(), x, y));
  return out;
}

std::uint64_t naive_energy(const ElementSet& x, const ElementSet& b) {
  auto ex = x.elements();
  auto eb = b.elements();
  std::uint64_t count = 0;
  for (const auto& x1 : ex)
    for (const auto& b1 : eb)
      for (const auto& x2 : ex)
        for (const auto& b2 : eb) count += add(x.spec(), x1, b1) == add(x.spec(), x2, b2);
  return count;
}

std::set<GroupElement> as_set(const ElementSet& s) {
  auto e = s.elements();
  return {e.begin(), e.end()};
}

}  // namespace

TEST(Sumset, SmallCyclic) {
  auto a = cyclic_set(10, {0, 1, 2});
  auto s = sumset(a, a);
  EXPECT_EQ(s, cyclic_set(10, {0, 1, 2, 3, 4}));
  EXPECT_EQ(difference(a, a), cyclic_set(10, {0, 1, 2, 8, 9}));
  EXPECT_EQ(sumset(cyclic_set(10, {5, 7}), cyclic_set(10, {6})), cyclic_set(10, {1, 3}));
}

TEST(Sumset, InfiniteFactor) {
  GroupSpec g{4, 0};
  auto a = make_set(g, {{0, 0}, {1, 1}, {3, -5}});
  auto s = sumset(a, a);
  EXPECT_EQ(as_set(s), naive_sumset(a, a));
  EXPECT_TRUE(s.contains(GroupElement{2, -10}));
  EXPECT_TRUE(s.contains(GroupElement{0, -4}));
  EXPECT_EQ(dilate(2, a), make_set(g, {{0, 0}, {2, 2}, {2, -10}}));
}

TEST(Sumset, AgreesWithNaiveAcrossStorages) {
  Rng rng(21);
  for (int t = 0; t < 150; ++t) {
    auto g = random_finite_spec(rng, 500);
    auto n = std::min<std::uint64_t>(g.order(), 20);
    auto a = random_subset(rng, g, 1 + rng.below(n));
    auto b = random_subset(rng, g, 1 + rng.below(n));
    auto expect = naive_sumset(a, b);
    EXPECT_EQ(as_set(sumset(a, b)), expect);
    EXPECT_EQ(as_set(sumset(a.to_sparse(), b.to_sparse())), expect);
    EXPECT_EQ(as_set(sumset(a.to_dense(), b.to_sparse())), expect);
    EXPECT_EQ(sumset(a, b), sumset(a.to_sparse(), b.to_sparse()));
  }
}

TEST(Sumset, CommutativeAndAssociative) {
  Rng rng(22);
  for (int t = 0; t < 100; ++t) {
    auto g = random_finite_spec(rng, 400);
    auto n = std::min<std::uint64_t>(g.order(), 12);
    auto a = random_subset(rng, g, 1 + rng.below(n));
    auto b = random_subset(rng, g, 1 + rng.below(n));
    auto c = random_subset(rng, g, 1 + rng.below(n));
    EXPECT_EQ(sumset(a, b), sumset(b, a));
    EXPECT_EQ(sumset(sumset(a, b), c), sumset(a, sumset(b, c)));
    EXPECT_EQ(difference(a, b), sumset(a, negate(b)));
    EXPECT_EQ(iterated_sumset(3, a), sumset(a, sumset(a, a)));
    EXPECT_EQ(iterated_sumset(1, a), a);
  }
}

TEST(Sumset, MismatchedSpecsRejected) {
  auto a = cyclic_set(5, {1});
  auto b = cyclic_set(7, {1});
  EXPECT_THROW(sumset(a, b), std::invalid_argument);
  EXPECT_THROW(iterated_sumset(0, a), std::invalid_argument);
}

TEST(Dilate, DistinctFromIteratedSumset) {
  auto a = cyclic_set(20, {0, 1, 3});
  EXPECT_EQ(dilate(2, a), cyclic_set(20, {0, 2, 6}));
  EXPECT_EQ(iterated_sumset(2, a), cyclic_set(20, {0, 1, 2, 3, 4, 6}));
  EXPECT_EQ(dilate(-1, a), cyclic_set(20, {0, 19, 17}));
  EXPECT_EQ(dilate(0, a), cyclic_set(20, {0}));
}

TEST(Translate, UniteIntersect) {
  auto a = cyclic_set(7, {0, 1, 2});
  EXPECT_EQ(translate(a, GroupElement{6}), cyclic_set(7, {6, 0, 1}));
  EXPECT_EQ(unite(a, cyclic_set(7, {5})), cyclic_set(7, {0, 1, 2, 5}));
  EXPECT_EQ(intersect(a, cyclic_set(7, {2, 3})), cyclic_set(7, {2}));
}

TEST(Energy, HandComputedValue) {
  // {0,1} in Z/5: sums 0,1,1,2 -> histogram 1,2,1 -> energy 1 + 4 + 1.
  auto a = cyclic_set(5, {0, 1});
  EXPECT_EQ(additive_energy(a, a), 6u);
  auto counts = convolution_counts(a, a);
  ASSERT_EQ(counts.size(), 3u);
  EXPECT_EQ(counts[1].first, GroupElement{1});
  EXPECT_EQ(counts[1].second, 2u);
}

TEST(Energy, SubgroupIsCubeOfSize) {
  auto h = dilate_image(GroupSpec{4, 4}, 2);
  EXPECT_EQ(additive_energy(h, h), h.size() * h.size() * h.size());
}

TEST(Energy, AgreesWithQuadrupleCount) {
  Rng rng(23);
  for (int t = 0; t < 120; ++t) {
    auto g = random_finite_spec(rng, 300);
    auto n = std::min<std::uint64_t>(g.order(), 14);
    auto x = random_subset(rng, g, 1 + rng.below(n));
    auto b = random_subset(rng, g, 1 + rng.below(n));
    auto expect = naive_energy(x, b);
    EXPECT_EQ(additive_energy(x, b), expect);
    EXPECT_EQ(additive_energy(x.to_sparse(), b.to_sparse()), expect);
    std::uint64_t total = 0, squares = 0;
    for (const auto& [s, c] : convolution_counts(x, b)) {
      total += c;
      squares += c * c;
    }
    EXPECT_EQ(total, x.size() * b.size());
    EXPECT_EQ(squares, expect);
  }
}

TEST(Energy, LargeGroupTakesSortPath) {
  // |G| > 2^16 exercises the sort-based histogram.
  GroupSpec g{300, 300};
  Rng rng(24);
  auto x = random_subset(rng, g, 15);
  auto b = random_subset(rng, g, 15);
  EXPECT_EQ(additive_energy(x, b), naive_energy(x, b));
}

TEST(TripleCorrelation, MatchesDefinition) {
  Rng rng(25);
  for (int t = 0; t < 100; ++t) {
    auto g = random_finite_spec(rng, 300);
    auto a = random_subset(rng, g, 1 + rng.below(std::min<std::uint64_t>(g.order(), 30)));
    std::uint64_t expect = 0;
    for (const auto& x : a.elements())
      for (const auto& y : a.elements()) expect += a.contains(add(g, x, y));
    EXPECT_EQ(triple_correlation(a), expect);
    EXPECT_EQ(triple_correlation(a.to_sparse()), expect);
  }
  auto h = dilate_image(GroupSpec{6, 4}, 2);
  EXPECT_EQ(triple_correlation(h), h.size() * h.size());
}
