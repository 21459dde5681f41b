#include <gtest/gtest.h>

#include "drbcp/gamma.hpp"
#include "drbcp/generators.hpp"
#include "drbcp/uncertainty.hpp"
#include "test_support.hpp"

using namespace drbcp;
using namespace testing_support;

TEST(Kernels, ParallelMatchesSerialOnMultihop) {
  MultihopParams p;
  p.nodes = 12;
  p.N = 40;
  p.seed = 9;
  auto gen = gen_multihop(p);
  for (double r : {1.0, 2.0}) {
    auto serial = robust_scenario_values(gen.system, gen.scenarios, 0.1, r, Sense::capacity, Execution::serial);
    auto parallel = robust_scenario_values(gen.system, gen.scenarios, 0.1, r, Sense::capacity, Execution::parallel);
    ASSERT_EQ(serial.size(), parallel.size());
    for (std::size_t k = 0; k < serial.size(); ++k) {
      EXPECT_EQ(serial[k].t_star, parallel[k].t_star);
      EXPECT_EQ(serial[k].raised, parallel[k].raised);
    }
  }
  EXPECT_EQ(bottleneck_values(gen.system, gen.scenarios, Sense::capacity, Execution::serial),
            bottleneck_values(gen.system, gen.scenarios, Sense::capacity, Execution::parallel));
  auto a = drbcp_u(gen.system, gen.scenarios, AmbiguityConfig::wasserstein(0.1), Sense::capacity, Execution::serial);
  auto b = drbcp_u(gen.system, gen.scenarios, AmbiguityConfig::wasserstein(0.1), Sense::capacity, Execution::parallel);
  EXPECT_EQ(a.v_U, b.v_U);
}

TEST(Kernels, GammaParallelMatchesSerial) {
  std::mt19937_64 rng(91);
  auto sys = CombinatorialSystem::assignment(3);
  auto sc = random_scenarios(rng, 9, 16);
  auto a = gamma_u(sys, sc, 0.5, 2.0, 2, true, Execution::serial);
  auto b = gamma_u(sys, sc, 0.5, 2.0, 2, true, Execution::parallel);
  EXPECT_EQ(a.saa, b.saa);
  EXPECT_EQ(*a.exact, *b.exact);
}

TEST(Kernels, ErrorsPropagateFromWorkers) {
  ScenarioSet sc(3, {{3, 5, 7}, {1, 2, 3}});
  sc.costs[4] = std::nan("");
  for (Execution exec : {Execution::serial, Execution::parallel}) {
    try {
      robust_scenario_values(triangle(), sc, 0.1, 1.0, Sense::cost, exec);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::domain);
    }
  }
}
