#pragma once

#include <optional>
#include <span>
#include <vector>

#include "drbcp/bottleneck.hpp"
#include "drbcp/scenarios.hpp"
#include "drbcp/uncertainty.hpp"

namespace drbcp {

struct GammaQuote {
  double saa = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::optional<double> exact;
  bool downgraded = false;
  int max_union_size = 0;
  bool union_exact = false;
};

// max over beta >= 0 with ||beta||_r <= theta of min over s in y of sum_{j in s} (cbar_j + beta_j).
double gamma_family_value(const SetFamily& y, std::span<const double> cbar, double theta, double r);

// Robust Gamma-sum quote: SAA value, the two-sided bracket and, when the
// Gamma-blocker can be enumerated, the exact value.
GammaQuote gamma_u(const CombinatorialSystem& system, const ScenarioSet& scenarios, double theta, double r, int gamma,
                   bool want_exact = true, Execution exec = Execution::parallel);

struct GammaRadius {
  double structural = 0.0;  // uses the largest union over the Gamma-blocker
  double plain = 0.0;       // Gamma^{-(r-1)/r} scaling only
};

GammaRadius radius_gamma_u(int N, double sigma, double epsilon, int gamma, double r, int max_union_size);

// maximize c.x subject to A x <= b, x >= 0, with b >= 0 (origin feasible).
// Dense tableau with Bland's rule.
double simplex_maximize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                        const std::vector<double>& c, std::vector<double>* solution = nullptr);

}  // namespace drbcp
