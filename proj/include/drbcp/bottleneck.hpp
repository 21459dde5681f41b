#pragma once

#include <span>
#include <vector>

#include "drbcp/instances.hpp"

namespace drbcp {

struct BottleneckResult {
  double value = 0.0;
  Subset argmin;
  BlockerElement dual_witness;
};

// min over x in X of max_{j in x} c_j, with a primal member and a blocker element
// whose smallest cost equals the value.
BottleneckResult bottleneck_value(const CombinatorialSystem& system, std::span<const double> c);

// Value only; skips the dual witness.
double bottleneck_cost(const CombinatorialSystem& system, std::span<const double> c);

// max over blocker elements of their smallest cost, computed without the
// feasibility sweep.
double dual_bottleneck_value(const CombinatorialSystem& system, std::span<const double> c);

struct GammaSumResult {
  double value = 0.0;
  Subset argmin;
};

// min over x of the sum of the gamma largest costs in x.
GammaSumResult gamma_sum_value(const CombinatorialSystem& system, std::span<const double> c, int gamma);

void require_gamma_feasible(const CombinatorialSystem& system, int gamma);

// A member of the gamma-blocker: a family of gamma-subsets.
using SetFamily = std::vector<Subset>;

std::vector<SetFamily> gamma_blocker_enumerate(const Clutter& clutter, int gamma);

}  // namespace drbcp
