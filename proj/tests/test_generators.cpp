#include <gtest/gtest.h>

#include <sstream>

#include "drbcp/generators.hpp"
#include "drbcp/stats.hpp"

using namespace drbcp;

TEST(Multihop, ShannonArithmetic) {
  double snr = multihop_snr(0.15, 1e-10, 0.05);
  EXPECT_NEAR(snr, 18.12, 0.01);
  EXPECT_NEAR(shannon_capacity(1.0, snr, 1.0), std::log2(1.0 + snr), 1e-15);
  EXPECT_NEAR(shannon_capacity(1.0, snr, 1.0), 4.257, 1e-3);
  EXPECT_EQ(shannon_capacity(1.0, snr, 0.0), 0.0);
}

TEST(Multihop, DefaultShapeAndDeterminism) {
  MultihopParams p;
  p.N = 30;
  p.seed = 42;
  auto a = gen_multihop(p);
  auto b = gen_multihop(p);
  EXPECT_EQ(a.system.size(), 190);
  EXPECT_EQ(a.scenarios.N, 30);
  EXPECT_EQ(a.scenarios.costs, b.scenarios.costs);
  for (double c : a.scenarios.costs) EXPECT_GT(c, 0.0);
  EXPECT_EQ(a.metadata["generator"], "gen_multihop");
  EXPECT_EQ(a.metadata["params"]["seed"], 42);
  p.seed = 43;
  EXPECT_NE(gen_multihop(p).scenarios.costs, a.scenarios.costs);
}

TEST(Multihop, RejectsBadParams) {
  MultihopParams p;
  p.power_lo = -1;
  EXPECT_THROW(gen_multihop(p), Error);
  p = {};
  p.s = p.t = 0;
  EXPECT_THROW(gen_multihop(p), Error);
}

TEST(Matching, TruncationAndDeterminism) {
  TruncGaussParams p;
  p.m = 3;
  p.mean.assign(9, 0.0);
  p.base_std.assign(9, 1.0);
  p.alpha = 10.0;
  p.N = 200;
  p.seed = 7;
  auto a = gen_matching_gaussian(p);
  for (double c : a.scenarios.costs) EXPECT_GE(c, 0.0);
  EXPECT_EQ(a.scenarios.costs, gen_matching_gaussian(p).scenarios.costs);
  EXPECT_EQ(a.system.size(), 9);
}

TEST(Matching, TinyAlphaStaysNearMean) {
  TruncGaussParams p;
  p.m = 2;
  p.mean = {10, 20, 30, 40};
  p.base_std = {1, 1, 1, 1};
  p.alpha = 1e-9;
  p.N = 5;
  auto a = gen_matching_gaussian(p);
  for (int k = 0; k < a.scenarios.N; ++k)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(a.scenarios.row(k)[j], p.mean[j], 1e-6);
}

TEST(Matching, TruncatedMeanSanityBand) {
  TruncGaussParams p;
  p.m = 1;
  p.mean = {1.0};
  p.base_std = {1.0};
  p.alpha = 2.0;
  p.N = 40000;
  p.seed = 3;
  auto a = gen_matching_gaussian(p);
  // Normal(1, 2) truncated at 0: mean = 1 + 2 phi(0.5) / Phi(0.5).
  const double expected = 1.0 + 2.0 * 0.3520653267642995 / 0.6914624612740131;
  std::vector<double> v(a.scenarios.costs.begin(), a.scenarios.costs.end());
  EXPECT_NEAR(canonical_mean(v), expected, 3.0 * 2.0 / std::sqrt(40000.0));
}

TEST(Matching, DimensionMismatch) {
  TruncGaussParams p;
  p.m = 2;
  p.mean = {1, 2, 3};
  p.base_std = {1, 1, 1, 1};
  p.N = 2;
  try {
    gen_matching_gaussian(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::dimension);
  }
}

TEST(Rng, StreamsDifferAndRepeat) {
  Rng a(1, 0), b(1, 1), c(1, 0);
  EXPECT_NE(a.next(), b.next());
  Rng d(1, 0);
  c.next();
  EXPECT_EQ(d.next(), Rng(1, 0).next());
  for (int i = 0; i < 1000; ++i) {
    double u = a.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_GE(a.exponential(), 0.0);
    int k = a.below(7);
    EXPECT_GE(k, 0);
    EXPECT_LT(k, 7);
  }
}

TEST(Rng, MomentsLookRight) {
  Rng rng(11);
  std::vector<double> n, e;
  for (int i = 0; i < 50000; ++i) {
    n.push_back(rng.normal());
    e.push_back(rng.exponential());
  }
  EXPECT_NEAR(canonical_mean(n), 0.0, 0.03);
  EXPECT_NEAR(population_variance(n), 1.0, 0.03);
  EXPECT_NEAR(canonical_mean(e), 1.0, 0.03);
}
