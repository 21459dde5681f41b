#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace drbcp;
using namespace testing_support;

TEST(Bottleneck, TriangleExample) {
  std::vector<double> c{3, 5, 7};
  auto r = bottleneck_value(triangle(), c);
  EXPECT_EQ(r.value, 5.0);
  EXPECT_EQ(r.argmin, (Subset{0, 1}));
  EXPECT_EQ(r.dual_witness.elements, (Subset{1, 2}));
  EXPECT_EQ(dual_bottleneck_value(triangle(), c), 5.0);
}

TEST(Bottleneck, TwoByTwoAssignment) {
  std::vector<double> c{1, 2, 3, 4};
  auto r = bottleneck_value(CombinatorialSystem::assignment(2), c);
  EXPECT_EQ(r.value, 3.0);
  EXPECT_EQ(r.argmin, (Subset{1, 2}));
  EXPECT_EQ(min_over(r.dual_witness.elements, c), 3.0);
}

TEST(Bottleneck, ConstantCosts) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    auto sys = random_small_system(rng);
    std::vector<double> c(sys.size(), 4.25);
    EXPECT_EQ(bottleneck_value(sys, c).value, 4.25);
  }
}

TEST(Bottleneck, PrimalDualAndWitnessesAgreeWithEnumeration) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    auto sys = random_small_system(rng);
    auto members = brute_force_members(sys);
    auto c = random_costs(rng, sys.size(), trial % 2 == 0);
    auto r = bottleneck_value(sys, c);
    EXPECT_EQ(r.value, brute_bottleneck(members, c));
    EXPECT_EQ(dual_bottleneck_value(sys, c), r.value);
    EXPECT_TRUE(std::binary_search(members.begin(), members.end(), r.argmin));
    EXPECT_EQ(max_over(r.argmin, c), r.value);
    EXPECT_EQ(min_over(r.dual_witness.elements, c), r.value);
    EXPECT_EQ(bottleneck_cost(sys, c), r.value);
  }
}

TEST(Bottleneck, DimensionAndDomainErrors) {
  std::vector<double> short_c{1, 2};
  EXPECT_THROW(bottleneck_value(triangle(), short_c), Error);
  std::vector<double> bad{1, std::nan(""), 2};
  try {
    bottleneck_value(triangle(), bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::domain);
  }
}

TEST(GammaSum, Examples) {
  std::vector<double> c{1, 2, 3, 4};
  EXPECT_EQ(gamma_sum_value(CombinatorialSystem::assignment(2), c, 2).value, 5.0);
  auto ex = CombinatorialSystem::explicit_family(3, {{0, 1, 2}});
  std::vector<double> e{1, 5, 2};
  EXPECT_EQ(gamma_sum_value(ex, e, 2).value, 7.0);
}

TEST(GammaSum, GammaOneIsBottleneck) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    auto sys = random_small_system(rng);
    auto c = random_costs(rng, sys.size(), false);
    EXPECT_EQ(gamma_sum_value(sys, c, 1).value, bottleneck_value(sys, c).value);
  }
}

TEST(GammaSum, MatchesEnumeration) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 150; ++trial) {
    auto sys = random_small_system(rng);
    int gamma = uniform_int(rng, 1, std::max(1, std::min(3, min_member_size(sys))));
    auto members = brute_force_members(sys);
    auto c = random_costs(rng, sys.size(), trial % 3 == 0);
    double brute = kInf;
    for (const auto& x : members) brute = std::min(brute, top_sum_of(x, c, gamma));
    auto r = gamma_sum_value(sys, c, gamma);
    EXPECT_EQ(r.value, brute);
    EXPECT_EQ(top_sum_of(r.argmin, c, gamma), r.value);
  }
}

TEST(GammaSum, RejectsGammaAboveSmallestMember) {
  std::vector<double> c{1, 2, 3};
  try {
    gamma_sum_value(triangle(), c, 2);  // the path {st} has one edge
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::domain);
  }
}

TEST(GammaBlocker, TwoByTwoMatchings) {
  auto fam = gamma_blocker_enumerate(Clutter(4, {{0, 3}, {1, 2}}), 2);
  ASSERT_EQ(fam.size(), 1u);
  EXPECT_EQ(fam[0], (SetFamily{{0, 3}, {1, 2}}));
}

TEST(GammaBlocker, GammaOneGivesSingletonFamilies) {
  auto fam = gamma_blocker_enumerate(Clutter(3, {{0, 1}, {1, 2}}), 1);
  std::sort(fam.begin(), fam.end());
  EXPECT_EQ(fam, (std::vector<SetFamily>{{{0}, {2}}, {{1}}}));
}

TEST(GammaBlocker, DualEqualsPrimal) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    auto sys = random_explicit_system(rng, uniform_int(rng, 3, 6), uniform_int(rng, 1, 4));
    Clutter c = antichain_reduce(brute_force_members(sys), sys.size());
    int smallest = 99;
    for (const auto& x : c.members()) smallest = std::min(smallest, static_cast<int>(x.size()));
    int gamma = uniform_int(rng, 1, std::min(2, smallest));
    auto fam = gamma_blocker_enumerate(c, gamma);
    for (int k = 0; k < 5; ++k) {
      auto cost = random_costs(rng, sys.size(), false);
      double dual = -kInf;
      for (const auto& y : fam) {
        double low = kInf;
        for (const auto& s : y) {
          double total = 0.0;
          for (int j : s) total += cost[j];
          low = std::min(low, total);
        }
        dual = std::max(dual, low);
      }
      EXPECT_NEAR(dual, gamma_sum_value(sys, cost, gamma).value, 1e-12);
    }
  }
}
