#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "drbcp/instances.hpp"
#include "drbcp/scenarios.hpp"

namespace drbcp {

struct DecisionReport {
  std::string model;
  Subset x;
  double objective = 0.0;
  std::vector<double> per_scenario;
  double mean = 0.0;
  double variance = 0.0;
  std::optional<double> threshold;
};

// Per-scenario value of a fixed subset: max cost (gamma == 1) or sum of the gamma largest.
std::vector<double> scenario_values(const ScenarioSet& scenarios, const Subset& x, int gamma = 1);

// Report for a fixed subset with objective = mean.
DecisionReport evaluate_subset(const ScenarioSet& scenarios, const Subset& x, int gamma = 1,
                               const std::string& model = "evaluate");

DecisionReport saa_d(const CombinatorialSystem& system, const ScenarioSet& scenarios);
DecisionReport drbcp_d(const CombinatorialSystem& system, const ScenarioSet& scenarios, double theta);

std::vector<std::vector<double>> worst_case_distribution_d(const Subset& x, const ScenarioSet& scenarios,
                                                           double theta);

double radius_d(int N, double sigma, double epsilon, int n);
// Half-width for a single fixed solution.
double radius_d_ci(int N, double sigma, double epsilon);
double radius_gamma_d(int N, double sigma, double epsilon, int n, int gamma, double r);
// 1.645 * sqrt(variance / N) of a decision.
double theta_variance_rule(const DecisionReport& report);

struct IndifferenceSet {
  double threshold = 0.0;
  int gamma = 1;
  std::optional<std::vector<Subset>> members;
  bool contains(const ScenarioSet& scenarios, const Subset& x) const;
};

IndifferenceSet indifference_set(const CombinatorialSystem& system, const ScenarioSet& scenarios, double theta,
                                 bool materialize = false);

DecisionReport decision_robust(const CombinatorialSystem& system, const ScenarioSet& scenarios, double theta);

// decision_robust at every theta of a grid from a single search.
std::vector<DecisionReport> decision_robust_sweep(const CombinatorialSystem& system, const ScenarioSet& scenarios,
                                                  const std::vector<double>& thetas);

// min over beta of (1 - d/2) beta + mean((v - beta)_+) + (d/2) max v.
double tv_objective(std::span<const double> values, double d);

DecisionReport tv_decision(const CombinatorialSystem& system, const ScenarioSet& scenarios, double d);

// Sum-of-gamma-largest counterparts. The additive term is gamma^{(r-1)/r} theta.
DecisionReport gamma_saa_d(const CombinatorialSystem& system, const ScenarioSet& scenarios, int gamma);
DecisionReport gamma_d(const CombinatorialSystem& system, const ScenarioSet& scenarios, double theta, double r,
                       int gamma);
DecisionReport gamma_decision_robust(const CombinatorialSystem& system, const ScenarioSet& scenarios, double theta,
                                     double r, int gamma);

// Assignment members as a permutation: row i -> column.
std::vector<int> as_permutation(const CombinatorialSystem& system, const Subset& x);

}  // namespace drbcp
