#include <gtest/gtest.h>

#include "drbcp/members.hpp"
#include "test_support.hpp"

using namespace drbcp;
using namespace testing_support;

namespace {

std::vector<Subset> elements_of(const std::vector<BlockerElement>& blocker) {
  std::vector<Subset> out;
  for (const auto& y : blocker) out.push_back(y.elements);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subset> k_subsets(int n, int k) {
  std::vector<Subset> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask)
    if (__builtin_popcount(mask) == k) {
      Subset s;
      for (int j = 0; j < n; ++j)
        if (mask >> j & 1u) s.push_back(j);
      out.push_back(s);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(AntichainReduce, DropsStrictSupersets) {
  Clutter c = antichain_reduce({{1, 2}, {1, 2, 3}, {3}}, 4);
  EXPECT_EQ(c.members(), (std::vector<Subset>{{1, 2}, {3}}));
}

TEST(AntichainReduce, KeepsAntichain) {
  EXPECT_EQ(antichain_reduce({{1}, {2}}, 3).members(), (std::vector<Subset>{{1}, {2}}));
}

TEST(AntichainReduce, RandomFamiliesStayBottleneckEquivalent) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Subset> family;
    for (int i = 0; i < 10; ++i) {
      Subset s;
      for (int j = 0; j < 6; ++j)
        if (uniform_int(rng, 0, 1)) s.push_back(j);
      if (s.empty()) s.push_back(uniform_int(rng, 0, 5));
      family.push_back(s);
    }
    Clutter c = antichain_reduce(family, 6);
    for (std::size_t a = 0; a < c.members().size(); ++a)
      for (std::size_t b = 0; b < c.members().size(); ++b)
        if (a != b) EXPECT_FALSE(std::includes(c.members()[b].begin(), c.members()[b].end(),
                                               c.members()[a].begin(), c.members()[a].end()));
    for (int k = 0; k < 20; ++k) {
      auto cost = random_costs(rng, 6, false);
      EXPECT_EQ(brute_bottleneck(family, cost), brute_bottleneck(c.members(), cost));
    }
  }
}

TEST(Clutter, RejectsComparableMembers) {
  try {
    Clutter(3, {{0}, {0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_instance);
  }
}

TEST(BlockerEnumerate, UniformClutterGivesComplementSizedSets) {
  auto blocker = blocker_enumerate(Clutter(4, k_subsets(4, 2)));
  EXPECT_EQ(elements_of(blocker), k_subsets(4, 3));
}

TEST(BlockerEnumerate, SingletonIsSelfBlocking) {
  EXPECT_EQ(elements_of(blocker_enumerate(Clutter(1, {{0}}))), (std::vector<Subset>{{0}}));
}

TEST(BlockerEnumerate, TrianglePathsGiveTwoCuts) {
  auto members = brute_force_members(triangle());
  auto blocker = elements_of(blocker_enumerate(antichain_reduce(members, 3)));
  EXPECT_EQ(blocker, (std::vector<Subset>{{0, 2}, {1, 2}}));
}

TEST(BlockerEnumerate, BlockerOfBlockerIsIdentity) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto sys = random_explicit_system(rng, uniform_int(rng, 2, 8), uniform_int(rng, 1, 6));
    Clutter c = antichain_reduce(std::get<ExplicitSystem>(sys.structure()).sets, sys.size());
    auto blocker = elements_of(blocker_enumerate(c));
    EXPECT_EQ(blocker, brute_blocker(sys.size(), c.members()));
    EXPECT_EQ(elements_of(blocker_enumerate(Clutter(sys.size(), blocker))), c.members());
  }
}

TEST(BlockerEnumerate, GuardRefusesLargeGround) {
  try {
    blocker_enumerate(Clutter(25, {{0}, {24}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::enumeration_limit);
  }
}

TEST(MinWeightBlocker, TriangleCheapCut) {
  std::vector<double> w{3, 1, 0};
  auto r = min_weight_blocker(triangle(), w);
  EXPECT_EQ(r.value, 1.0);
  EXPECT_EQ(r.witness.elements, (Subset{1, 2}));
}

TEST(MinWeightBlocker, ZeroWeights) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto sys = random_small_system(rng);
    std::vector<double> w(sys.size(), 0.0);
    EXPECT_EQ(min_weight_blocker(sys, w).value, 0.0);
  }
}

TEST(MinWeightBlocker, AssignmentAllOnesIsThreeByEnumeration) {
  auto sys = CombinatorialSystem::assignment(3);
  std::vector<double> w(9, 1.0);
  auto r = min_weight_blocker(sys, w);
  EXPECT_EQ(r.value, 3.0);
  auto blocker = blocker_enumerate(antichain_reduce(brute_force_members(sys), 9));
  std::size_t smallest = 99;
  for (const auto& y : blocker) smallest = std::min(smallest, y.elements.size());
  EXPECT_EQ(smallest, 3u);
}

TEST(MinWeightBlocker, MatchesEnumeratedBlocker) {
  std::mt19937_64 rng(17);
  std::vector<CombinatorialSystem> systems;
  for (int i = 0; i < 10; ++i) systems.push_back(random_path_system(rng, 8));
  for (int i = 0; i < 10; ++i) systems.push_back(random_tree_system(rng, 6));
  for (int m = 1; m <= 4; ++m) systems.push_back(CombinatorialSystem::assignment(m));
  for (int i = 0; i < 10; ++i) systems.push_back(random_explicit_system(rng, 7, 5));
  for (const auto& sys : systems) {
    auto blocker = elements_of(blocker_enumerate(antichain_reduce(brute_force_members(sys), sys.size())));
    for (int trial = 0; trial < 20; ++trial) {
      auto w = random_costs(rng, sys.size(), trial % 2 == 0);
      double brute = kInf;
      for (const auto& y : blocker) {
        double total = 0.0;
        for (int j : y) total += w[j];
        brute = std::min(brute, total);
      }
      auto r = min_weight_blocker(sys, w);
      EXPECT_EQ(r.value, brute);
      EXPECT_TRUE(std::binary_search(blocker.begin(), blocker.end(), r.witness.elements));
    }
  }
}

TEST(FeasibleAtThreshold, Examples) {
  std::vector<double> c{3, 5, 7};
  EXPECT_TRUE(feasible_at_threshold(triangle(), c, 5));
  EXPECT_FALSE(feasible_at_threshold(triangle(), c, 2));
  std::vector<double> a{1, 2, 3, 4};
  EXPECT_TRUE(feasible_at_threshold(CombinatorialSystem::assignment(2), a, 3));
  EXPECT_FALSE(feasible_at_threshold(CombinatorialSystem::assignment(2), a, 2.5));
}

TEST(Members, Counts) {
  EXPECT_EQ(brute_force_members(triangle()).size(), 2u);
  auto cycle = CombinatorialSystem::tree(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  EXPECT_EQ(brute_force_members(cycle).size(), 4u);
  EXPECT_EQ(brute_force_members(CombinatorialSystem::assignment(4)).size(), 24u);
  auto k4 = CombinatorialSystem::tree(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  EXPECT_EQ(brute_force_members(k4).size(), 16u);
}

TEST(Members, GuardAndForce) {
  auto big = CombinatorialSystem::assignment(5);
  try {
    brute_force_members(big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::enumeration_limit);
  }
  EXPECT_EQ(brute_force_members(big, true).size(), 120u);
}

TEST(Instances, Validation) {
  auto kind_of = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::parse;
  };
  EXPECT_EQ(kind_of([] { CombinatorialSystem::path(3, {{0, 1}}, 0, 2); }), ErrorKind::invalid_instance);
  EXPECT_EQ(kind_of([] { CombinatorialSystem::path(3, {{0, 0}}, 0, 2); }), ErrorKind::invalid_instance);
  EXPECT_EQ(kind_of([] { CombinatorialSystem::tree(3, {{0, 1}}); }), ErrorKind::invalid_instance);
  EXPECT_EQ(kind_of([] { CombinatorialSystem::explicit_family(3, {{0, 5}}); }), ErrorKind::invalid_instance);
  EXPECT_EQ(kind_of([] { CombinatorialSystem::assignment(0); }), ErrorKind::invalid_instance);
}

TEST(Instances, ParallelEdgesAreSeparateElements) {
  auto sys = CombinatorialSystem::path(2, {{0, 1}, {0, 1}}, 0, 1);
  EXPECT_EQ(brute_force_members(sys), (std::vector<Subset>{{0}, {1}}));
  std::vector<double> w{2, 3};
  EXPECT_EQ(min_weight_blocker(sys, w).value, 5.0);
}

TEST(BlockerSizes, StructuralBounds) {
  auto tri = max_blocker_size(triangle());
  EXPECT_EQ(tri.size, 2);
  EXPECT_TRUE(tri.exact);
  EXPECT_EQ(min_blocker_size(triangle()), 2);
  // a(m+1-a) peaks at 2*2 = 4 for m = 3.
  EXPECT_EQ(max_blocker_size(CombinatorialSystem::assignment(3)).size, 4);
  EXPECT_EQ(min_blocker_size(CombinatorialSystem::assignment(3)), 3);
}

TEST(BlockerSizes, MatchEnumeration) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    auto sys = random_small_system(rng);
    auto blocker = elements_of(blocker_enumerate(antichain_reduce(brute_force_members(sys), sys.size())));
    std::size_t lo = 99, hi = 0;
    for (const auto& y : blocker) {
      lo = std::min(lo, y.size());
      hi = std::max(hi, y.size());
    }
    EXPECT_EQ(min_blocker_size(sys), static_cast<int>(lo));
    auto bound = max_blocker_size(sys);
    if (bound.exact) EXPECT_EQ(bound.size, static_cast<int>(hi));
    else EXPECT_GE(bound.size, static_cast<int>(hi));
  }
}
