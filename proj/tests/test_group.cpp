#include <gtest/gtest.h>

#include <numeric>

#include "apxhom/element_set.hpp"
#include "apxhom/random.hpp"

using namespace apxhom;

// ---------------------------------------------------------------------------
// Specs and elements

TEST(GroupSpec, RejectsModulusOneAndNegative) {
  EXPECT_THROW(GroupSpec({1}), std::invalid_argument);
  EXPECT_THROW(GroupSpec({4, -3}), std::invalid_argument);
  EXPECT_NO_THROW(GroupSpec({}));
  EXPECT_NO_THROW(GroupSpec({4, 0}));
}

TEST(GroupSpec, OrderAndFiniteness) {
  GroupSpec g{2, 2, 2, 5};
  EXPECT_TRUE(g.is_finite());
  EXPECT_EQ(g.order(), 40u);
  EXPECT_EQ(g.order_exact(), 40);
  EXPECT_EQ(GroupSpec{}.order(), 1u);

  GroupSpec z{4, 0};
  EXPECT_FALSE(z.is_finite());
  EXPECT_THROW(z.order(), std::invalid_argument);
  EXPECT_THROW(z.order_exact(), std::invalid_argument);
}

TEST(GroupSpec, ExactOrderBeyondMachineRange) {
  std::vector<std::int64_t> m(70, 2);
  GroupSpec g(m);
  EXPECT_EQ(g.order_exact(), BigInt(1) << 70);
  EXPECT_THROW(g.order(), std::overflow_error);
}

TEST(GroupElement, MakeElementReduces) {
  GroupSpec g{4, 0};
  auto x = make_element(g, {-1, -7});
  EXPECT_EQ(x, (GroupElement{3, -7}));
  EXPECT_THROW(make_element(g, {1}), std::invalid_argument);
}

TEST(GroupElement, Arithmetic) {
  GroupSpec g{4, 6, 0};
  auto x = make_element(g, {3, 5, 2});
  auto y = make_element(g, {2, 4, -9});
  EXPECT_EQ(add(g, x, y), (GroupElement{1, 3, -7}));
  EXPECT_EQ(neg(g, x), (GroupElement{1, 1, -2}));
  EXPECT_EQ(sub(g, x, y), (GroupElement{1, 1, 11}));
  EXPECT_EQ(scalar_mul(g, 3, x), (GroupElement{1, 3, 6}));
  EXPECT_EQ(scalar_mul(g, -1, x), neg(g, x));
  EXPECT_EQ(scalar_mul(g, 0, x), identity(g));
}

TEST(GroupElement, InfiniteCoordinateOverflowIsReported) {
  GroupSpec z{0};
  auto big = make_element(z, {std::numeric_limits<std::int64_t>::max()});
  EXPECT_THROW(add(z, big, big), std::overflow_error);
  EXPECT_THROW(scalar_mul(z, 2, big), std::overflow_error);
}

TEST(GroupSpec, DirectProductJoinSlice) {
  GroupSpec a{2, 3}, b{5};
  auto ab = direct_product(a, b);
  EXPECT_EQ(ab, (GroupSpec{2, 3, 5}));
  auto x = join(GroupElement{1, 2}, GroupElement{4});
  EXPECT_EQ(x, (GroupElement{1, 2, 4}));
  EXPECT_EQ(slice(x, 0, 2), (GroupElement{1, 2}));
  EXPECT_EQ(slice(x, 2, 1), (GroupElement{4}));
}

// ---------------------------------------------------------------------------
// Structure

TEST(InvariantFactors, KnownDecompositions) {
  EXPECT_EQ(invariant_factors(GroupSpec{4, 6}), (GroupSpec{2, 12}));
  EXPECT_EQ(invariant_factors(GroupSpec{2, 3}), (GroupSpec{6}));
  EXPECT_EQ(invariant_factors(GroupSpec{2, 2, 4}), (GroupSpec{2, 2, 4}));
  EXPECT_EQ(invariant_factors(GroupSpec{12, 18, 0}), (GroupSpec{6, 36, 0}));
  EXPECT_EQ(invariant_factors(GroupSpec{}), GroupSpec{});
}

TEST(InvariantFactors, ChainOrderAndExponentOnRandomSpecs) {
  Rng rng(11);
  for (int t = 0; t < 500; ++t) {
    auto g = random_finite_spec(rng, 5000);
    auto inv = invariant_factors(g);
    EXPECT_EQ(inv.order(), g.order());
    EXPECT_EQ(exponent(inv), exponent(g));
    if (inv.factor_count() > 0) {
      EXPECT_EQ(inv.modulus(inv.factor_count() - 1), exponent(g));
    }
    for (std::size_t i = 0; i + 1 < inv.factor_count(); ++i) EXPECT_EQ(inv.modulus(i + 1) % inv.modulus(i), 0);
    EXPECT_EQ(invariant_factors(inv), inv);
  }
}

TEST(Dilation, KernelTimesImageIsOrder) {
  Rng rng(12);
  for (int t = 0; t < 300; ++t) {
    auto g = random_finite_spec(rng, 3000);
    auto r = rng.between(-20, 20);
    EXPECT_EQ(kernel_order(g, r) * dilate_order(g, r), g.order_exact()) << "r=" << r;
    auto k = kernel_subgroup(g, r);
    auto img = dilate_image(g, r);
    EXPECT_EQ(BigInt(k.size()), kernel_order(g, r));
    EXPECT_EQ(BigInt(img.size()), dilate_order(g, r));
  }
}

TEST(Dilation, KernelAndImageBruteForce) {
  GroupSpec g{4, 6};
  for (std::int64_t r = 0; r <= 13; ++r) {
    std::size_t kernel = 0;
    std::set<GroupElement> image;
    for (std::uint64_t k = 0; k < g.order(); ++k) {
      auto x = unrank(g, k);
      auto rx = scalar_mul(g, r, x);
      if (rx == identity(g)) ++kernel;
      image.insert(rx);
    }
    EXPECT_EQ(kernel_subgroup(g, r).size(), kernel);
    EXPECT_EQ(dilate_image(g, r).size(), image.size());
    for (const auto& e : image) EXPECT_TRUE(dilate_image(g, r).contains(e));
  }
}

TEST(Dilation, InfiniteFactor) {
  GroupSpec g{4, 0};
  EXPECT_EQ(kernel_order(g, 2), 2);
  EXPECT_EQ(kernel_subgroup(g, 2).size(), 2u);
  EXPECT_THROW(kernel_subgroup(g, 0), std::invalid_argument);
  EXPECT_THROW(dilate_image(g, 2), std::invalid_argument);
}

TEST(Exponent, Lcm) {
  EXPECT_EQ(exponent(GroupSpec{4, 6}), 12);
  EXPECT_EQ(exponent(GroupSpec{}), 1);
  EXPECT_THROW(exponent(GroupSpec{0}), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Ranking

TEST(Rank, LittleEndianMixedRadix) {
  GroupSpec g{2, 3};
  EXPECT_EQ(rank(g, GroupElement{1, 0}), 1u);
  EXPECT_EQ(rank(g, GroupElement{0, 1}), 2u);
  EXPECT_EQ(rank(g, GroupElement{1, 2}), 5u);
  EXPECT_EQ(unrank(g, 3), (GroupElement{1, 1}));
  EXPECT_THROW(unrank(g, 6), std::out_of_range);
  EXPECT_THROW(rank(GroupSpec{0}, GroupElement{3}), std::invalid_argument);
}

TEST(Rank, BijectionOnRandomSpecs) {
  Rng rng(13);
  for (int t = 0; t < 50; ++t) {
    auto g = random_finite_spec(rng, 2000);
    for (std::uint64_t k = 0; k < g.order(); ++k) ASSERT_EQ(rank(g, unrank(g, k)), k);
  }
}

// ---------------------------------------------------------------------------
// Group axioms on random triples

TEST(GroupAxioms, RandomTriples) {
  Rng rng(14);
  for (int t = 0; t < 10000; ++t) {
    auto g = random_finite_spec(rng, 1000);
    auto draw = [&] { return unrank(g, rng.below(g.order())); };
    auto x = draw(), y = draw(), z = draw();
    ASSERT_EQ(add(g, add(g, x, y), z), add(g, x, add(g, y, z)));
    ASSERT_EQ(add(g, x, y), add(g, y, x));
    ASSERT_EQ(add(g, x, identity(g)), x);
    ASSERT_EQ(add(g, x, neg(g, x)), identity(g));
    auto r = rng.between(-10, 10);
    ASSERT_EQ(scalar_mul(g, r, add(g, x, y)), add(g, scalar_mul(g, r, x), scalar_mul(g, r, y)));
  }
}

TEST(DenseIndexer, AgreesWithCoordinateArithmetic) {
  Rng rng(15);
  for (int t = 0; t < 200; ++t) {
    auto g = t % 4 == 0 ? GroupSpec(std::vector<std::int64_t>(1 + rng.below(8), 2)) : random_finite_spec(rng, 4096);
    DenseIndexer ix(g);
    for (int s = 0; s < 50; ++s) {
      auto a = rng.below(g.order()), b = rng.below(g.order());
      auto x = unrank(g, a), y = unrank(g, b);
      auto r = rng.between(-6, 6);
      ASSERT_EQ(ix.add(a, b), rank(g, add(g, x, y)));
      ASSERT_EQ(ix.sub(a, b), rank(g, sub(g, x, y)));
      ASSERT_EQ(ix.neg(a), rank(g, neg(g, x)));
      ASSERT_EQ(ix.scalar_mul(r, a), rank(g, scalar_mul(g, r, x)));
    }
  }
}

// ---------------------------------------------------------------------------
// Element sets

TEST(ElementSet, DenseAndSparseAgree) {
  Rng rng(16);
  for (int t = 0; t < 200; ++t) {
    auto g = random_finite_spec(rng, 3000);
    auto s = random_subset(rng, g, 1 + rng.below(std::min<std::uint64_t>(40, g.order())));
    auto d = s.to_dense(), sp = s.to_sparse();
    EXPECT_TRUE(d.is_dense());
    EXPECT_FALSE(sp.is_dense());
    EXPECT_EQ(d, sp);
    EXPECT_EQ(d.elements(), sp.elements());
    EXPECT_EQ(d.ranks(), sp.ranks());
    for (std::uint64_t k = 0; k < g.order(); ++k) ASSERT_EQ(d.contains(unrank(g, k)), sp.contains(unrank(g, k)));
  }
}

TEST(ElementSet, FromElementsDeduplicatesAndReduces) {
  GroupSpec g{5};
  auto s = ElementSet::from_elements(g, {GroupElement{1}, GroupElement{6}, GroupElement{-4}, GroupElement{3}});
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.contains(GroupElement{1}));
  EXPECT_TRUE(s.contains(GroupElement{3}));
}

TEST(ElementSet, InfiniteGroupsAreSparse) {
  GroupSpec g{4, 0};
  auto s = ElementSet::from_elements(g, {GroupElement{1, -100}, GroupElement{1, 100}});
  EXPECT_FALSE(s.is_dense());
  EXPECT_EQ(s.size(), 2u);
  EXPECT_THROW(ElementSet::from_elements(g, {GroupElement{1, 1}}, Storage::dense), std::invalid_argument);
}

TEST(ElementSet, SubsetAndWhole) {
  GroupSpec g{3, 3};
  auto w = ElementSet::whole(g);
  EXPECT_EQ(w.size(), 9u);
  auto k = kernel_subgroup(g, 3);
  EXPECT_EQ(k, w);
  auto z = kernel_subgroup(g, 1);
  EXPECT_EQ(z.size(), 1u);
  EXPECT_TRUE(z.is_subset_of(w));
  EXPECT_FALSE(w.is_subset_of(z));
}
