#include "drbcp/uncertainty.hpp"

#include <algorithm>
#include <cmath>

#include "drbcp/bottleneck.hpp"
#include "drbcp/stats.hpp"
#include "parallel.hpp"
#include "radius_common.hpp"

namespace drbcp {

AmbiguityConfig AmbiguityConfig::wasserstein(double theta, double r, double q) {
  AmbiguityConfig c;
  c.kind = Kind::wasserstein;
  c.theta = theta;
  c.r = r;
  c.q = q;
  c.validate();
  return c;
}

AmbiguityConfig AmbiguityConfig::total_variation(double d) {
  AmbiguityConfig c;
  c.kind = Kind::total_variation;
  c.d = d;
  c.validate();
  return c;
}

void AmbiguityConfig::validate() const {
  if (kind == Kind::wasserstein) {
    require(std::isfinite(theta) && theta >= 0.0, ErrorKind::domain, "radius theta must be finite and >= 0");
    require(std::isfinite(r) && r >= 1.0, ErrorKind::domain, "ground norm order r must be >= 1");
    require(q >= 1.0, ErrorKind::domain, "Wasserstein order q must be >= 1");
  } else {
    require(d >= 0.0 && d <= 2.0, ErrorKind::domain, "total-variation radius d must lie in [0, 2]");
  }
}

double t_star_l1(std::span<const double> sorted_costs, double theta) {
  require(!sorted_costs.empty(), ErrorKind::domain, "blocker element has no costs");
  require(std::is_sorted(sorted_costs.begin(), sorted_costs.end()), ErrorKind::domain,
          "t_star_l1 expects costs in ascending order");
  require(std::isfinite(theta) && theta >= 0.0, ErrorKind::domain, "theta must be finite and >= 0");
  const std::size_t m = sorted_costs.size();
  double prefix = 0.0;
  for (std::size_t p = 1; p <= m; ++p) {
    prefix += sorted_costs[p - 1];
    double value = (prefix + theta) / static_cast<double>(p);
    if (p == m || value < sorted_costs[p]) return value;
  }
  return sorted_costs.back();
}

namespace {

double raise_power(double x, double r) {
  if (r == 1.0) return x;
  if (r == 2.0) return x * x;
  return std::pow(x, r);
}

}  // namespace

double t_star_closed_form(std::span<const double> costs, double theta, double r) {
  require(!costs.empty(), ErrorKind::domain, "blocker element has no costs");
  require(std::isfinite(theta) && theta >= 0.0, ErrorKind::domain, "theta must be finite and >= 0");
  require(std::isfinite(r) && r >= 1.0, ErrorKind::domain, "r must be >= 1");
  std::vector<double> c(costs.begin(), costs.end());
  std::sort(c.begin(), c.end());
  if (theta == 0.0) return c.front();
  if (r == 1.0) return t_star_l1(c, theta);

  const double budget = raise_power(theta, r);
  const std::size_t m = c.size();
  for (std::size_t p = 1; p <= m; ++p) {
    if (p < m) {
      double spent = 0.0;
      for (std::size_t i = 0; i < p; ++i) spent += raise_power(c[p] - c[i], r);
      if (spent <= budget) continue;
    }
    if (r == 2.0) {
      double mean = 0.0;
      for (std::size_t i = 0; i < p; ++i) mean += c[i];
      mean /= static_cast<double>(p);
      double spread = 0.0;
      for (std::size_t i = 0; i < p; ++i) spread += (c[i] - mean) * (c[i] - mean);
      return mean + std::sqrt(std::max(0.0, (budget - spread) / static_cast<double>(p)));
    }
    double lo = c[p - 1];
    double hi = p < m ? c[p] : c[p - 1] + theta;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      double spent = 0.0;
      for (std::size_t i = 0; i < p; ++i) spent += raise_power(mid - c[i], r);
      if (spent <= budget) lo = mid;
      else hi = mid;
    }
    return lo;
  }
  return c.back();
}

ScenarioRobust robust_scenario_value(const CombinatorialSystem& system, std::span<const double> cbar, double theta,
                                     double r) {
  require(std::isfinite(theta) && theta >= 0.0, ErrorKind::domain, "radius theta must be finite and >= 0");
  require(std::isfinite(r) && r >= 1.0, ErrorKind::domain, "ground norm order r must be >= 1");
  BottleneckResult base = bottleneck_value(system, cbar);

  auto closed = [&](const Subset& y) {
    std::vector<double> costs;
    costs.reserve(y.size());
    for (int j : y) costs.push_back(cbar[j]);
    return t_star_closed_form(costs, theta, r);
  };

  ScenarioRobust best;
  best.t_star = closed(base.dual_witness.elements);
  best.blocker = std::move(base.dual_witness);

  if (theta > 0.0) {
    const double budget = raise_power(theta, r);
    double scale = 0.0;
    for (double c : cbar) scale = std::max(scale, std::abs(c));
    const double tol = 1e-9 * (1.0 + scale);
    std::vector<double> w(cbar.size());
    auto probe = [&](double t) {
      for (std::size_t j = 0; j < cbar.size(); ++j) w[j] = raise_power(std::max(0.0, t - cbar[j]), r);
      return min_weight_blocker(system, w);
    };
    auto consider = [&](WeightedBlocker& found) {
      double cand = closed(found.witness.elements);
      if (cand > best.t_star) {
        best.t_star = cand;
        best.blocker = std::move(found.witness);
        return true;
      }
      return false;
    };

    double lo = std::max(base.value, best.t_star);
    double hi = base.value + theta;
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
      double mid = 0.5 * (lo + hi);
      WeightedBlocker found = probe(mid);
      const bool within = found.value <= budget;
      consider(found);
      lo = std::max(lo, best.t_star);
      if (within) lo = std::max(lo, mid);
      else hi = std::min(hi, mid);
    }
    // Ascent on closed forms: stops once the cheapest blocker at t* is the current one.
    for (int it = 0; it < 1000; ++it) {
      WeightedBlocker found = probe(best.t_star);
      if (!consider(found)) break;
    }
  }

  for (int j : best.blocker.elements)
    if (cbar[j] <= best.t_star) best.raised.push_back(j);
  return best;
}

double sensed_bottleneck(const CombinatorialSystem& system, std::span<const double> c, Sense sense) {
  if (sense == Sense::cost) return bottleneck_cost(system, c);
  std::vector<double> neg(c.begin(), c.end());
  for (double& v : neg) v = -v;
  return -bottleneck_cost(system, neg);
}

std::vector<ScenarioRobust> robust_scenario_values(const CombinatorialSystem& system, const ScenarioSet& scenarios,
                                                   double theta, double r, Sense sense, Execution exec) {
  require(scenarios.n == system.size(), ErrorKind::dimension, "scenario width differs from the ground set size");
  std::vector<ScenarioRobust> out(scenarios.N);
  detail::parallel_for(scenarios.N, exec, [&](int k) {
    if (sense == Sense::cost) {
      out[k] = robust_scenario_value(system, scenarios.row(k), theta, r);
    } else {
      std::vector<double> neg(scenarios.row(k).begin(), scenarios.row(k).end());
      for (double& v : neg) v = -v;
      out[k] = robust_scenario_value(system, neg, theta, r);
      out[k].t_star = -out[k].t_star;
    }
  });
  return out;
}

std::vector<double> bottleneck_values(const CombinatorialSystem& system, const ScenarioSet& scenarios, Sense sense,
                                      Execution exec) {
  require(scenarios.n == system.size(), ErrorKind::dimension, "scenario width differs from the ground set size");
  std::vector<double> out(scenarios.N);
  detail::parallel_for(scenarios.N, exec, [&](int k) { out[k] = sensed_bottleneck(system, scenarios.row(k), sense); });
  return out;
}

RobustQuote drbcp_u(const CombinatorialSystem& system, const ScenarioSet& scenarios, const AmbiguityConfig& config,
                    Sense sense, Execution exec) {
  config.validate();
  require(config.kind == AmbiguityConfig::Kind::wasserstein && std::isinf(config.q), ErrorKind::domain,
          "drbcp_u handles the infinity-Wasserstein set; use q_wasserstein_u for finite q");
  RobustQuote quote;
  quote.config = config;
  quote.sense = sense;
  quote.per_scenario = robust_scenario_values(system, scenarios, config.theta, config.r, sense, exec);
  std::vector<double> values;
  for (const auto& s : quote.per_scenario) values.push_back(s.t_star);
  quote.v_U = canonical_mean(values);
  quote.saa = saa_u(system, scenarios, sense, exec);
  quote.worst_case_support = worst_case_distribution_u(quote, scenarios);
  return quote;
}

std::vector<std::vector<double>> worst_case_distribution_u(const RobustQuote& quote, const ScenarioSet& scenarios) {
  require(static_cast<int>(quote.per_scenario.size()) == scenarios.N, ErrorKind::dimension,
          "quote and scenario set differ in N");
  std::vector<std::vector<double>> support;
  for (int k = 0; k < scenarios.N; ++k) {
    std::vector<double> c(scenarios.row(k).begin(), scenarios.row(k).end());
    for (int j : quote.per_scenario[k].raised) c[j] = quote.per_scenario[k].t_star;
    support.push_back(std::move(c));
  }
  return support;
}

double saa_u(const CombinatorialSystem& system, const ScenarioSet& scenarios, Sense sense, Execution exec) {
  return canonical_mean(bottleneck_values(system, scenarios, sense, exec));
}

void SandwichReport::enforce() const {
  require(holds, ErrorKind::invariant_violation,
          "sandwich bound violated: gap " + std::to_string(gap) + " outside [" + std::to_string(lower) + ", " +
              std::to_string(upper) + "]");
}

SandwichReport sandwich_bounds_u(double v_u, double v_saa, double theta, double r, int max_blocker_size,
                                 Sense sense) {
  require(max_blocker_size >= 1, ErrorKind::domain, "blocker size must be positive");
  require(theta >= 0.0 && r >= 1.0, ErrorKind::domain, "need theta >= 0 and r >= 1");
  SandwichReport rep;
  rep.gap = sense == Sense::cost ? v_u - v_saa : v_saa - v_u;
  rep.lower = theta / std::pow(static_cast<double>(max_blocker_size), 1.0 / r);
  rep.upper = theta;
  rep.lower_margin = rep.gap - rep.lower;
  rep.upper_margin = rep.upper - rep.gap;
  rep.holds = rep.lower_margin >= -kSandwichSlack && rep.upper_margin >= -kSandwichSlack;
  return rep;
}

RadiusSpec radius_u(int N, double sigma, double epsilon, int max_blocker_size, double r) {
  require(max_blocker_size >= 1 && r >= 1.0, ErrorKind::domain, "need blocker size >= 1 and r >= 1");
  RadiusSpec spec{N, sigma, epsilon, std::pow(static_cast<double>(max_blocker_size), 1.0 / r), 0.0};
  spec.theta = detail::concentration_rate(N, sigma, epsilon) * spec.structural_constant;
  return spec;
}

RadiusSpec radius_u_unscaled(int N, double sigma, double epsilon) {
  return RadiusSpec{N, sigma, epsilon, 1.0, detail::concentration_rate(N, sigma, epsilon)};
}

}  // namespace drbcp
