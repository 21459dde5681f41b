#pragma once

#include <limits>
#include <span>
#include <vector>

#include "drbcp/instances.hpp"
#include "drbcp/scenarios.hpp"

namespace drbcp {

struct AmbiguityConfig {
  enum class Kind { wasserstein, total_variation };

  Kind kind = Kind::wasserstein;
  double q = std::numeric_limits<double>::infinity();
  double r = 1.0;
  double theta = 0.0;
  double d = 0.0;

  static AmbiguityConfig wasserstein(double theta, double r = 1.0,
                                     double q = std::numeric_limits<double>::infinity());
  static AmbiguityConfig total_variation(double d);
  void validate() const;
};

enum class Execution { serial, parallel };

struct ScenarioRobust {
  double t_star = 0.0;
  BlockerElement blocker;
  Subset raised;
};

struct RobustQuote {
  double v_U = 0.0;
  double saa = 0.0;
  std::vector<ScenarioRobust> per_scenario;
  std::vector<std::vector<double>> worst_case_support;
  AmbiguityConfig config;
  Sense sense = Sense::cost;
};

// Largest t with sum over the cheapest prefix of (t - c) equal to theta.
// Costs must be ascending.
double t_star_l1(std::span<const double> sorted_costs, double theta);

// max{t : sum_j (t - c_j)_+^r <= theta^r} for one blocker element.
double t_star_closed_form(std::span<const double> costs, double theta, double r);

ScenarioRobust robust_scenario_value(const CombinatorialSystem& system, std::span<const double> cbar, double theta,
                                     double r);

// Per-scenario kernels. The serial loop is the reference for the OpenMP one.
std::vector<ScenarioRobust> robust_scenario_values(const CombinatorialSystem& system, const ScenarioSet& scenarios,
                                                   double theta, double r, Sense sense, Execution exec);
std::vector<double> bottleneck_values(const CombinatorialSystem& system, const ScenarioSet& scenarios, Sense sense,
                                      Execution exec);

// Bottleneck value in the given sense: min-max for cost, max-min for capacity.
double sensed_bottleneck(const CombinatorialSystem& system, std::span<const double> c, Sense sense);

RobustQuote drbcp_u(const CombinatorialSystem& system, const ScenarioSet& scenarios, const AmbiguityConfig& config,
                    Sense sense = Sense::cost, Execution exec = Execution::parallel);

std::vector<std::vector<double>> worst_case_distribution_u(const RobustQuote& quote, const ScenarioSet& scenarios);

double saa_u(const CombinatorialSystem& system, const ScenarioSet& scenarios, Sense sense = Sense::cost,
             Execution exec = Execution::parallel);

struct SandwichReport {
  bool holds = false;
  double gap = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double lower_margin = 0.0;
  double upper_margin = 0.0;
  // Throws invariant_violation when !holds.
  void enforce() const;
};

inline constexpr double kSandwichSlack = 1e-9;

SandwichReport sandwich_bounds_u(double v_u, double v_saa, double theta, double r, int max_blocker_size,
                                 Sense sense = Sense::cost);

struct RadiusSpec {
  int N = 0;
  double sigma = 0.0;
  double epsilon = 0.0;
  double structural_constant = 1.0;
  double theta = 0.0;
};

RadiusSpec radius_u(int N, double sigma, double epsilon, int max_blocker_size, double r);
// Same rate without the structural constant.
RadiusSpec radius_u_unscaled(int N, double sigma, double epsilon);

}  // namespace drbcp
