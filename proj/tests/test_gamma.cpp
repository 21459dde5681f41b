#include <gtest/gtest.h>

#include "drbcp/gamma.hpp"
#include "test_support.hpp"

using namespace drbcp;
using namespace testing_support;

namespace {

// max over a grid of the r-ball (nonnegative part) of min over pieces.
double grid_family_value(const SetFamily& y, const std::vector<double>& cbar, double theta, double r, int steps) {
  Subset support;
  for (const auto& s : y) support.insert(support.end(), s.begin(), s.end());
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  const int p = static_cast<int>(support.size());
  std::vector<int> idx(p, 0);
  double best = -kInf;
  while (true) {
    std::vector<double> beta(p);
    double norm = 0.0;
    for (int i = 0; i < p; ++i) {
      beta[i] = theta * idx[i] / steps;
      norm += std::pow(beta[i], r);
    }
    if (std::pow(norm, 1.0 / r) <= theta * (1 + 1e-12)) {
      double low = kInf;
      for (const auto& s : y) {
        double total = 0.0;
        for (int j : s) {
          auto pos = std::lower_bound(support.begin(), support.end(), j) - support.begin();
          total += cbar[j] + beta[pos];
        }
        low = std::min(low, total);
      }
      best = std::max(best, low);
    }
    int i = 0;
    while (i < p && ++idx[i] > steps) idx[i++] = 0;
    if (i == p) break;
  }
  return best;
}

}  // namespace

TEST(Simplex, SmallLinearProgram) {
  // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x <= 3 -> (3, 1), value 11.
  std::vector<double> sol;
  double v = simplex_maximize({{1, 1}, {1, 3}, {1, 0}}, {4, 6, 3}, {3, 2}, &sol);
  EXPECT_NEAR(v, 11.0, 1e-12);
  EXPECT_NEAR(sol[0], 3.0, 1e-12);
  EXPECT_NEAR(sol[1], 1.0, 1e-12);
}

TEST(Simplex, DetectsUnbounded) {
  try {
    simplex_maximize({{1, -1}}, {1}, {1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::numerical_convergence);
  }
}

TEST(GammaU, TwoByTwoExample) {
  ScenarioSet sc(4, {{1, 2, 3, 4}});
  auto g = gamma_u(CombinatorialSystem::assignment(2), sc, 1.0, 1.0, 2);
  EXPECT_EQ(g.saa, 5.0);
  EXPECT_EQ(g.max_union_size, 4);
  EXPECT_DOUBLE_EQ(g.lower, 5.5);
  EXPECT_DOUBLE_EQ(g.upper, 6.0);
  ASSERT_TRUE(g.exact.has_value());
  EXPECT_NEAR(*g.exact, 5.5, 1e-12);
  SetFamily y{{0, 3}, {1, 2}};
  EXPECT_NEAR(grid_family_value(y, {1, 2, 3, 4}, 1.0, 1.0, 20), 5.5, 1e-9);
}

TEST(GammaU, GammaOneMatchesBottleneckPipeline) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    auto sys = random_small_system(rng);
    auto sc = random_scenarios(rng, sys.size(), uniform_int(rng, 1, 4));
    double theta = uniform_real(rng, 0.0, 2.0);
    for (double r : {1.0, 2.0}) {
      auto g = gamma_u(sys, sc, theta, r, 1);
      auto q = drbcp_u(sys, sc, AmbiguityConfig::wasserstein(theta, r));
      EXPECT_EQ(g.saa, q.saa);
      ASSERT_TRUE(g.exact.has_value());
      EXPECT_EQ(*g.exact, q.v_U);
      EXPECT_EQ(g.upper, q.saa + theta);
    }
  }
}

TEST(GammaU, ExactWithinBracketAndGrid) {
  std::mt19937_64 rng(32);
  int checked = 0;
  while (checked < 25) {
    auto sys = random_explicit_system(rng, uniform_int(rng, 3, 5), uniform_int(rng, 1, 3));
    if (min_member_size(sys) < 2) continue;
    ++checked;
    auto sc = random_scenarios(rng, sys.size(), 2);
    double theta = uniform_real(rng, 0.1, 1.5);
    for (double r : {1.0, 2.0}) {
      auto g = gamma_u(sys, sc, theta, r, 2);
      ASSERT_TRUE(g.exact.has_value());
      EXPECT_GE(*g.exact, g.lower - 1e-9);
      EXPECT_LE(*g.exact, g.upper + 1e-9);
    }
  }
}

TEST(GammaFamily, AgreesWithGridOnOverlappingPieces) {
  // Pieces share element 1, so neither the disjoint closed form applies.
  SetFamily y{{0, 1}, {1, 2}};
  std::vector<double> c{1.0, 2.0, 4.0};
  for (double r : {1.0, 2.0}) {
    double exact = gamma_family_value(y, c, 1.0, r);
    double grid = grid_family_value(y, c, 1.0, r, 200);
    EXPECT_GE(exact, grid - 1e-9);
    EXPECT_NEAR(exact, grid, 1e-2);
  }
  EXPECT_EQ(gamma_family_value(y, c, 0.0, 1.0), 3.0);
}

TEST(GammaU, DowngradesWhenBlockerTooLarge) {
  auto sys = CombinatorialSystem::assignment(5);
  std::mt19937_64 rng(1);
  auto sc = random_scenarios(rng, 25, 2);
  auto g = gamma_u(sys, sc, 0.5, 1.0, 2);
  EXPECT_FALSE(g.exact.has_value());
  EXPECT_TRUE(g.downgraded);
  EXPECT_LE(g.lower, g.upper);
}

TEST(GammaRadius, Formula) {
  auto rad = radius_gamma_u(100, 1.0, 0.05, 2, 1.0, 4);
  EXPECT_NEAR(rad.structural, 0.59957, 1e-4);
  EXPECT_NEAR(rad.plain, 0.299785, 1e-5);
  EXPECT_NEAR(radius_gamma_u(100, 1.0, 0.05, 4, 2.0, 4).plain, 0.299785 / 2.0, 1e-5);
}
