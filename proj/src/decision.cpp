#include "drbcp/decision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "drbcp/bottleneck.hpp"
#include "drbcp/members.hpp"
#include "drbcp/stats.hpp"
#include "radius_common.hpp"

namespace drbcp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool within(double bound, double limit) { return bound <= limit + 1e-12 * (1.0 + std::abs(limit)); }

// Tracks, for the partial member on the search path, each scenario's value
// (largest cost, or sum of the gamma largest).
class ScenarioSearch : public MemberVisitor {
 public:
  ScenarioSearch(const ScenarioSet& scenarios, int gamma) : sc_(scenarios), gamma_(gamma) {
    top_.push_back(std::vector<double>(static_cast<std::size_t>(sc_.N) * gamma_, -kInf));
  }

  bool enter(int element) override {
    std::vector<double> next = top_.back();
    for (int k = 0; k < sc_.N; ++k) {
      double v = sc_.row(k)[element];
      double* slot = next.data() + static_cast<std::size_t>(k) * gamma_;
      for (int i = 0; i < gamma_; ++i)
        if (v > slot[i]) std::swap(v, slot[i]);
    }
    top_.push_back(std::move(next));
    if (static_cast<int>(top_.size()) - 1 < gamma_) return true;
    return keep_going(current());
  }
  void leave(int) override { top_.pop_back(); }
  void member(const std::vector<int>& elements) override {
    Subset x = elements;
    std::sort(x.begin(), x.end());
    consider(x, current());
  }

 protected:
  virtual bool keep_going(const std::vector<double>& values) = 0;
  virtual void consider(const Subset& x, const std::vector<double>& values) = 0;

 private:
  std::vector<double> current() const {
    std::vector<double> values(sc_.N, 0.0);
    const auto& top = top_.back();
    for (int k = 0; k < sc_.N; ++k) {
      double total = 0.0;
      for (int i = 0; i < gamma_; ++i) total += top[static_cast<std::size_t>(k) * gamma_ + i];
      values[k] = total;
    }
    return values;
  }

  const ScenarioSet& sc_;
  int gamma_;
  std::vector<std::vector<double>> top_;
};

struct Candidate {
  double value = kInf;
  Subset x;
  bool better_than(double v, const Subset& other) const { return value < v || (value == v && x < other); }
};

class MinimizeMean final : public ScenarioSearch {
 public:
  using ScenarioSearch::ScenarioSearch;
  Candidate best;

 protected:
  bool keep_going(const std::vector<double>& values) override {
    return best.x.empty() || within(canonical_mean(values), best.value);
  }
  void consider(const Subset& x, const std::vector<double>& values) override {
    Candidate c{canonical_mean(values), x};
    if (best.x.empty() || c.better_than(best.value, best.x)) best = c;
  }
};

class MinimizeTv final : public ScenarioSearch {
 public:
  MinimizeTv(const ScenarioSet& sc, double d) : ScenarioSearch(sc, 1), d_(d) {}
  Candidate best;

 protected:
  bool keep_going(const std::vector<double>& values) override {
    return best.x.empty() || within(tv_objective(values, d_), best.value);
  }
  void consider(const Subset& x, const std::vector<double>& values) override {
    Candidate c{tv_objective(values, d_), x};
    if (best.x.empty() || c.better_than(best.value, best.x)) best = c;
  }

 private:
  double d_;
};

struct LevelMember {
  double mean;
  double variance;
  Subset x;
};

// Every member whose mean stays within the threshold.
class CollectLevelSet final : public ScenarioSearch {
 public:
  CollectLevelSet(const ScenarioSet& sc, int gamma, double threshold)
      : ScenarioSearch(sc, gamma), threshold_(threshold) {}
  std::vector<LevelMember> found;

 protected:
  bool keep_going(const std::vector<double>& values) override { return within(canonical_mean(values), threshold_); }
  void consider(const Subset& x, const std::vector<double>& values) override {
    double mean = canonical_mean(values);
    if (mean <= threshold_) found.push_back({mean, population_variance(values), x});
  }

 private:
  double threshold_;
};

void require_inputs(const CombinatorialSystem& system, const ScenarioSet& scenarios) {
  require(scenarios.n == system.size(), ErrorKind::dimension, "scenario width differs from the ground set size");
  scenarios.validate();
}

DecisionReport finish(const ScenarioSet& scenarios, const Subset& x, int gamma, const std::string& model,
                      double objective_shift = 0.0) {
  DecisionReport rep = evaluate_subset(scenarios, x, gamma, model);
  rep.objective = rep.mean + objective_shift;
  return rep;
}

const LevelMember& pick_lowest_variance(const std::vector<LevelMember>& members, double threshold) {
  const LevelMember* best = nullptr;
  for (const LevelMember& m : members) {
    if (m.mean > threshold) continue;
    if (!best || m.variance < best->variance || (m.variance == best->variance && m.x < best->x)) best = &m;
  }
  require(best != nullptr, ErrorKind::invariant_violation, "indifference set is empty");
  return *best;
}

double gamma_shift(double theta, double r, int gamma) {
  require(std::isfinite(theta) && theta >= 0.0, ErrorKind::domain, "theta must be finite and >= 0");
  require(std::isfinite(r) && r >= 1.0, ErrorKind::domain, "r must be >= 1");
  return std::pow(static_cast<double>(gamma), (r - 1.0) / r) * theta;
}

DecisionReport robust_within(const CombinatorialSystem& system, const ScenarioSet& scenarios, double threshold,
                             int gamma, const std::string& model) {
  CollectLevelSet search(scenarios, gamma, threshold);
  for_each_member(system, search);
  const LevelMember& best = pick_lowest_variance(search.found, threshold);
  DecisionReport rep = evaluate_subset(scenarios, best.x, gamma, model);
  rep.objective = rep.variance;
  rep.threshold = threshold;
  return rep;
}

}  // namespace

std::vector<double> scenario_values(const ScenarioSet& scenarios, const Subset& x, int gamma) {
  require(!x.empty(), ErrorKind::domain, "subset is empty");
  require(gamma >= 1 && gamma <= static_cast<int>(x.size()), ErrorKind::domain, "gamma exceeds the subset size");
  std::vector<double> values(scenarios.N);
  std::vector<double> costs(x.size());
  for (int k = 0; k < scenarios.N; ++k) {
    auto row = scenarios.row(k);
    for (std::size_t i = 0; i < x.size(); ++i) {
      require(x[i] >= 0 && x[i] < scenarios.n, ErrorKind::domain, "subset element out of range");
      costs[i] = row[x[i]];
    }
    values[k] = top_sum(costs, gamma);
  }
  return values;
}

DecisionReport evaluate_subset(const ScenarioSet& scenarios, const Subset& x, int gamma, const std::string& model) {
  DecisionReport rep;
  rep.model = model;
  rep.x = x;
  rep.per_scenario = scenario_values(scenarios, x, gamma);
  rep.mean = canonical_mean(rep.per_scenario);
  rep.variance = population_variance(rep.per_scenario);
  rep.objective = rep.mean;
  return rep;
}

DecisionReport saa_d(const CombinatorialSystem& system, const ScenarioSet& scenarios) {
  return gamma_saa_d(system, scenarios, 1);
}

DecisionReport drbcp_d(const CombinatorialSystem& system, const ScenarioSet& scenarios, double theta) {
  require(std::isfinite(theta) && theta >= 0.0, ErrorKind::domain, "theta must be finite and >= 0");
  DecisionReport rep = saa_d(system, scenarios);
  rep.model = "drbcp_d";
  rep.objective = rep.mean + theta;
  return rep;
}

std::vector<std::vector<double>> worst_case_distribution_d(const Subset& x, const ScenarioSet& scenarios,
                                                           double theta) {
  require(!x.empty(), ErrorKind::domain, "subset is empty");
  require(std::isfinite(theta) && theta >= 0.0, ErrorKind::domain, "theta must be finite and >= 0");
  Subset sorted = x;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::vector<double>> support;
  for (int k = 0; k < scenarios.N; ++k) {
    std::vector<double> c(scenarios.row(k).begin(), scenarios.row(k).end());
    int arg = sorted.front();
    for (int j : sorted)
      if (c[j] > c[arg]) arg = j;
    c[arg] += theta;
    support.push_back(std::move(c));
  }
  return support;
}

double radius_d(int N, double sigma, double epsilon, int n) {
  require(n >= 0, ErrorKind::domain, "element count must be >= 0");
  return detail::concentration_rate(N, sigma, epsilon, 3.0 * n * std::log(2.0));
}

double radius_d_ci(int N, double sigma, double epsilon) { return detail::concentration_rate(N, sigma, epsilon); }

double radius_gamma_d(int N, double sigma, double epsilon, int n, int gamma, double r) {
  require(gamma >= 1 && r >= 1.0, ErrorKind::domain, "need gamma >= 1 and r >= 1");
  return std::pow(static_cast<double>(gamma), -(r - 1.0) / r) * radius_d(N, sigma, epsilon, n);
}

double theta_variance_rule(const DecisionReport& report) {
  return 1.645 * std::sqrt(report.variance / static_cast<double>(report.per_scenario.size()));
}

bool IndifferenceSet::contains(const ScenarioSet& scenarios, const Subset& x) const {
  return canonical_mean(scenario_values(scenarios, x, gamma)) <= threshold;
}

IndifferenceSet indifference_set(const CombinatorialSystem& system, const ScenarioSet& scenarios, double theta,
                                 bool materialize) {
  require(std::isfinite(theta) && theta >= 0.0, ErrorKind::domain, "theta must be finite and >= 0");
  IndifferenceSet set;
  set.threshold = saa_d(system, scenarios).mean + theta;
  if (materialize) {
    require_enumerable(system);
    CollectLevelSet search(scenarios, 1, set.threshold);
    for_each_member(system, search);
    std::vector<Subset> members;
    for (auto& m : search.found) members.push_back(m.x);
    std::sort(members.begin(), members.end());
    set.members = std::move(members);
  }
  return set;
}

DecisionReport decision_robust(const CombinatorialSystem& system, const ScenarioSet& scenarios, double theta) {
  require(std::isfinite(theta) && theta >= 0.0, ErrorKind::domain, "theta must be finite and >= 0");
  const double threshold = saa_d(system, scenarios).mean + theta;
  return robust_within(system, scenarios, threshold, 1, "decision_robust");
}

std::vector<DecisionReport> decision_robust_sweep(const CombinatorialSystem& system, const ScenarioSet& scenarios,
                                                  const std::vector<double>& thetas) {
  require(!thetas.empty(), ErrorKind::domain, "theta grid is empty");
  for (double t : thetas) require(std::isfinite(t) && t >= 0.0, ErrorKind::domain, "theta must be finite and >= 0");
  const double base = saa_d(system, scenarios).mean;
  CollectLevelSet search(scenarios, 1, base + *std::max_element(thetas.begin(), thetas.end()));
  for_each_member(system, search);
  std::vector<DecisionReport> out;
  for (double theta : thetas) {
    const double threshold = base + theta;
    const LevelMember& best = pick_lowest_variance(search.found, threshold);
    DecisionReport rep = evaluate_subset(scenarios, best.x, 1, "decision_robust");
    rep.objective = rep.variance;
    rep.threshold = threshold;
    out.push_back(std::move(rep));
  }
  return out;
}

double tv_objective(std::span<const double> values, double d) {
  require(d >= 0.0 && d <= 2.0, ErrorKind::domain, "total-variation radius d must lie in [0, 2]");
  require(!values.empty(), ErrorKind::domain, "no scenario values");
  const double top = *std::max_element(values.begin(), values.end());
  std::vector<double> excess(values.size());
  double best = kInf;
  for (double beta : values) {
    for (std::size_t k = 0; k < values.size(); ++k) excess[k] = std::max(0.0, values[k] - beta);
    best = std::min(best, (1.0 - 0.5 * d) * beta + canonical_mean(excess) + 0.5 * d * top);
  }
  return best;
}

DecisionReport tv_decision(const CombinatorialSystem& system, const ScenarioSet& scenarios, double d) {
  require(d >= 0.0 && d <= 2.0, ErrorKind::domain, "total-variation radius d must lie in [0, 2]");
  require_inputs(system, scenarios);
  MinimizeTv search(scenarios, d);
  for_each_member(system, search);
  DecisionReport rep = evaluate_subset(scenarios, search.best.x, 1, "tv_decision");
  rep.objective = search.best.value;
  return rep;
}

DecisionReport gamma_saa_d(const CombinatorialSystem& system, const ScenarioSet& scenarios, int gamma) {
  require_inputs(system, scenarios);
  require_gamma_feasible(system, gamma);
  MinimizeMean search(scenarios, gamma);
  for_each_member(system, search);
  return finish(scenarios, search.best.x, gamma, gamma == 1 ? "saa_d" : "gamma_saa_d");
}

DecisionReport gamma_d(const CombinatorialSystem& system, const ScenarioSet& scenarios, double theta, double r,
                       int gamma) {
  const double shift = gamma_shift(theta, r, gamma);
  DecisionReport rep = gamma_saa_d(system, scenarios, gamma);
  rep.model = "gamma_d";
  rep.objective = rep.mean + shift;
  return rep;
}

DecisionReport gamma_decision_robust(const CombinatorialSystem& system, const ScenarioSet& scenarios, double theta,
                                     double r, int gamma) {
  const double shift = gamma_shift(theta, r, gamma);
  const double threshold = gamma_saa_d(system, scenarios, gamma).mean + shift;
  return robust_within(system, scenarios, threshold, gamma, "gamma_decision_robust");
}

std::vector<int> as_permutation(const CombinatorialSystem& system, const Subset& x) {
  const auto* a = std::get_if<AssignmentSystem>(&system.structure());
  require(a != nullptr, ErrorKind::domain, "permutation view needs an assignment system");
  std::vector<int> perm(a->m, -1);
  for (int cell : x) perm[cell / a->m] = cell % a->m;
  return perm;
}

}  // namespace drbcp
