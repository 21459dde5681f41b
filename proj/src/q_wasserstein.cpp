#include "drbcp/q_wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "drbcp/bottleneck.hpp"
#include "drbcp/members.hpp"
#include "drbcp/stats.hpp"
#include "drbcp/uncertainty.hpp"

namespace drbcp {

std::optional<std::vector<Subset>> small_blocker(const CombinatorialSystem& system) {
  try {
    if (system.kind() == SystemKind::explicit_family) return system.explicit_blocker();
    if (system.size() > kBlockerEnumerationLimit) return std::nullopt;
    auto members = brute_force_members(system);
    std::vector<Subset> out;
    for (auto& y : blocker_enumerate(antichain_reduce(members, system.size()))) out.push_back(std::move(y.elements));
    return out;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::enumeration_limit) throw;
    return std::nullopt;
  }
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Best value seen while golden-section searching a unimodal function on [lo, hi].
template <class F>
double golden_max(F f, double lo, double hi) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double best = std::max(f(lo), f(hi));
  double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 400 && hi - lo > 1e-12 * (1.0 + std::abs(lo)); ++it) {
    best = std::max({best, f1, f2});
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = f(x1);
    }
  }
  return std::max({best, f1, f2});
}

double positive_power_sum(std::span<const double> c, const Subset& y, double t, double r) {
  double total = 0.0;
  for (int j : y) {
    double gap = t - c[j];
    if (gap > 0.0) total += r == 1.0 ? gap : std::pow(gap, r);
  }
  return total;
}

// Largest t worth searching for max_t [t - lambda * (|y|^{1/r} (t - top))^q] to beat its value at `floor`.
double search_ceiling(double floor, double top, double lambda, double q, double size_root) {
  if (q == 1.0) {
    double slope = lambda * size_root;
    if (slope <= 1.0) return kInf;
    return std::max(top, (slope * top - floor) / (slope - 1.0));
  }
  double spread = std::max({std::pow(lambda * q, -1.0 / (q - 1.0)), std::pow(2.0 / lambda, 1.0 / (q - 1.0)),
                            std::pow(2.0 * (top - floor) / lambda, 1.0 / q)});
  return top + spread;
}

class DualObjective {
 public:
  DualObjective(const CombinatorialSystem& system, const ScenarioSet& scenarios, double theta, double q, double r)
      : system_(system), scenarios_(scenarios), theta_(theta), q_(q), r_(r), blockers_(small_blocker(system)) {
    require(std::isfinite(theta) && theta >= 0.0, ErrorKind::domain, "theta must be finite and >= 0");
    require(std::isfinite(q) && q >= 1.0, ErrorKind::domain, "q must be finite and >= 1");
    require(std::isfinite(r) && r >= 1.0, ErrorKind::domain, "r must be >= 1");
    require(scenarios.n == system.size(), ErrorKind::dimension, "scenario width differs from the ground set size");
    int smallest = blockers_ ? static_cast<int>(std::min_element(blockers_->begin(), blockers_->end(),
                                                                 [](const Subset& a, const Subset& b) {
                                                                   return a.size() < b.size();
                                                                 })->size())
                             : min_blocker_size(system);
    lambda_floor_ = q == 1.0 ? 1.0 / std::pow(static_cast<double>(smallest), 1.0 / r) : 0.0;
    min_size_root_ = std::pow(static_cast<double>(smallest), 1.0 / r);
    for (int k = 0; k < scenarios.N; ++k) floors_.push_back(bottleneck_cost(system, scenarios.row(k)));
  }

  bool exact() const { return blockers_.has_value(); }
  double lambda_floor() const { return lambda_floor_; }

  double operator()(double lambda) const {
    if (!(lambda > lambda_floor_)) return kInf;
    std::vector<double> inner(scenarios_.N);
    for (int k = 0; k < scenarios_.N; ++k) {
      inner[k] = blockers_ ? inner_exact(k, lambda) : inner_grid(k, lambda);
      if (!std::isfinite(inner[k])) return kInf;
    }
    return lambda * std::pow(theta_, q_) + canonical_mean(inner);
  }

 private:
  double shaped(double h) const { return q_ == r_ ? h : std::pow(h, q_ / r_); }

  double inner_exact(int k, double lambda) const {
    auto c = scenarios_.row(k);
    double best = -kInf;
    for (const Subset& y : *blockers_) {
      double low = kInf, top = -kInf;
      for (int j : y) {
        low = std::min(low, c[j]);
        top = std::max(top, c[j]);
      }
      double ceiling = search_ceiling(low, top, lambda, q_, std::pow(static_cast<double>(y.size()), 1.0 / r_));
      if (!std::isfinite(ceiling)) return kInf;
      auto f = [&](double t) { return t - lambda * shaped(positive_power_sum(c, y, t, r_)); };
      best = std::max(best, golden_max(f, low, ceiling));
    }
    return best;
  }

  double inner_grid(int k, double lambda) const {
    auto c = scenarios_.row(k);
    const double floor = floors_[k];
    double top = *std::max_element(c.begin(), c.end());
    double ceiling = search_ceiling(floor, top, lambda, q_, min_size_root_);
    if (!std::isfinite(ceiling)) return kInf;
    std::vector<double> w(c.size());
    auto f = [&](double t) {
      for (std::size_t j = 0; j < c.size(); ++j) {
        double gap = std::max(0.0, t - c[j]);
        w[j] = r_ == 1.0 ? gap : std::pow(gap, r_);
      }
      return t - lambda * shaped(min_weight_blocker(system_, w).value);
    };
    std::vector<double> points{floor, ceiling};
    for (double v : c)
      if (v > floor && v < ceiling) points.push_back(v);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    double best = -kInf;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) best = std::max(best, golden_max(f, points[i], points[i + 1]));
    return best;
  }

  const CombinatorialSystem& system_;
  const ScenarioSet& scenarios_;
  double theta_, q_, r_;
  std::optional<std::vector<Subset>> blockers_;
  double lambda_floor_ = 0.0;
  double min_size_root_ = 1.0;
  std::vector<double> floors_;
};

ScenarioSet negated(const ScenarioSet& s) {
  ScenarioSet out = s;
  for (double& v : out.costs) v = -v;
  return out;
}

}  // namespace

double q_wasserstein_objective(const CombinatorialSystem& system, const ScenarioSet& scenarios, double theta,
                               double q, double r, double lambda) {
  return DualObjective(system, scenarios, theta, q, r)(lambda);
}

QuantifyQ q_wasserstein_u(const CombinatorialSystem& system, const ScenarioSet& scenarios, double theta, double q,
                          double r, Sense sense) {
  if (sense == Sense::capacity) {
    QuantifyQ out = q_wasserstein_u(system, negated(scenarios), theta, q, r, Sense::cost);
    out.v_U = -out.v_U;
    return out;
  }
  DualObjective phi(system, scenarios, theta, q, r);
  QuantifyQ out;
  out.exact_inner = phi.exact();
  if (theta == 0.0) {
    out.v_U = saa_u(system, scenarios, Sense::cost);
    out.lambda_star = kInf;
    return out;
  }

  // Search over s with lambda = floor + e^s.
  const double base = phi.lambda_floor();
  const double s_min = base > 0.0 ? std::log(base * 1e-10) : -60.0;
  const double s_max = 60.0;
  auto lambda_of = [&](double s) { return base + std::exp(s); };
  int evaluations = 0;
  auto eval = [&](double s) {
    ++evaluations;
    require(evaluations <= 200, ErrorKind::numerical_convergence, "lambda search did not converge in 200 iterations");
    return phi(lambda_of(s));
  };

  double best_s = 0.0, best_v = eval(0.0);
  double right = eval(1.0);
  double dir = right < best_v ? 1.0 : -1.0;
  double lo, hi;
  if (dir > 0) {
    best_s = 1.0;
    best_v = right;
    lo = 0.0;
    hi = 2.0;
    while (true) {
      if (hi >= s_max) {
        hi = s_max;
        break;
      }
      double v = eval(hi);
      if (v >= best_v) break;
      lo = best_s;
      best_s = hi;
      best_v = v;
      hi += 1.0;
    }
  } else {
    lo = -1.0;
    hi = 1.0;
    while (true) {
      if (lo <= s_min) {
        lo = s_min;
        break;
      }
      double v = eval(lo);
      if (v >= best_v) break;
      hi = best_s;
      best_s = lo;
      best_v = v;
      lo -= 1.0;
    }
  }

  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
  double f1 = eval(x1), f2 = eval(x2);
  while (hi - lo > 1e-9) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = eval(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = eval(x2);
    }
  }
  for (auto [s, v] : {std::pair{x1, f1}, std::pair{x2, f2}})
    if (v < best_v) {
      best_v = v;
      best_s = s;
    }
  out.v_U = best_v;
  out.lambda_star = lambda_of(best_s);
  out.evaluations = evaluations;
  return out;
}

}  // namespace drbcp
