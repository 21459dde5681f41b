#pragma once

#include <optional>
#include <vector>

#include "drbcp/instances.hpp"
#include "drbcp/scenarios.hpp"

namespace drbcp {

struct QuantifyQ {
  double v_U = 0.0;
  double lambda_star = 0.0;
  int evaluations = 0;
  // Inner maximizations done per blocker element (exact) rather than on a breakpoint grid.
  bool exact_inner = false;
};

// Robust value over the order-q Wasserstein ball, via the univariate dual in lambda.
QuantifyQ q_wasserstein_u(const CombinatorialSystem& system, const ScenarioSet& scenarios, double theta, double q,
                          double r, Sense sense = Sense::cost);

// The dual objective at a fixed lambda (cost sense). +inf outside its domain.
double q_wasserstein_objective(const CombinatorialSystem& system, const ScenarioSet& scenarios, double theta,
                               double q, double r, double lambda);

// Explicit blocker list when the system is small enough to enumerate.
std::optional<std::vector<Subset>> small_blocker(const CombinatorialSystem& system);

}  // namespace drbcp
