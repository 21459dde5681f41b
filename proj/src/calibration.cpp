#include "drbcp/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/normal.hpp>

#include "drbcp/gamma.hpp"
#include "drbcp/stats.hpp"
#include "parallel.hpp"

namespace drbcp {

const char* to_string(CiMethod method) {
  switch (method) {
    case CiMethod::asymptotic: return "asymptotic";
    case CiMethod::theoretical_u: return "theoretical-U";
    case CiMethod::theoretical_d: return "theoretical-D";
    case CiMethod::theoretical_gamma_u: return "theoretical-gammaU";
    case CiMethod::theoretical_gamma_d: return "theoretical-gammaD";
  }
  return "?";
}

CiReport asymptotic_ci(std::span<const double> values, double level) {
  require(values.size() >= 2, ErrorKind::domain, "confidence interval needs at least 2 values");
  require(level > 0.0 && level < 1.0, ErrorKind::domain, "level must lie in (0, 1)");
  double z = 1.96;
  if (level != 0.95) z = boost::math::quantile(boost::math::normal(), 0.5 + 0.5 * level);
  const double n = static_cast<double>(values.size());
  return CiReport{canonical_mean(values), z * sample_stddev(values) / std::sqrt(n), level, CiMethod::asymptotic};
}

CiReport theoretical_ci(double point, int N, double sigma, double epsilon, RadiusKind kind, const StructuralArgs& args) {
  CiReport ci{point, 0.0, 1.0 - 2.0 * epsilon, CiMethod::theoretical_u};
  switch (kind) {
    case RadiusKind::U:
      ci.half_width = radius_u(N, sigma, epsilon, args.max_blocker_size, args.r).theta;
      break;
    case RadiusKind::D:
      ci.half_width = radius_d(N, sigma, epsilon, args.n);
      ci.method = CiMethod::theoretical_d;
      break;
    case RadiusKind::D_single:
      ci.half_width = radius_d_ci(N, sigma, epsilon);
      ci.method = CiMethod::theoretical_d;
      break;
    case RadiusKind::gamma_U:
      ci.half_width = radius_gamma_u(N, sigma, epsilon, args.gamma, args.r, args.max_union_size).structural;
      ci.method = CiMethod::theoretical_gamma_u;
      break;
    case RadiusKind::gamma_D:
      ci.half_width = radius_gamma_d(N, sigma, epsilon, args.n, args.gamma, args.r);
      ci.method = CiMethod::theoretical_gamma_d;
      break;
  }
  return ci;
}

std::optional<double> theta_star(const std::vector<std::pair<double, double>>& curve, const CiReport& ci,
                                 Sense orientation, std::optional<CiEndpoint> endpoint) {
  require(!curve.empty(), ErrorKind::domain, "theta grid is empty");
  for (std::size_t i = 1; i < curve.size(); ++i)
    require(curve[i - 1].first < curve[i].first, ErrorKind::domain, "curve must be sorted by theta");
  const bool capacity = orientation == Sense::capacity;
  const CiEndpoint side = endpoint.value_or(capacity ? CiEndpoint::upper : CiEndpoint::lower);
  const double bound = side == CiEndpoint::upper ? ci.upper() : ci.lower();
  for (const auto& [theta, value] : curve)
    if (capacity ? value < bound : value > bound) return theta;
  return std::nullopt;
}

const char* to_string(CvModel model) {
  switch (model) {
    case CvModel::decision_robust: return "decision_robust";
    case CvModel::tv_decision: return "tv_decision";
    case CvModel::drbcp_d: return "drbcp_d";
  }
  return "?";
}

CvModel parse_cv_model(const std::string& text) {
  if (text == "decision_robust") return CvModel::decision_robust;
  if (text == "tv_decision") return CvModel::tv_decision;
  if (text == "drbcp_d") return CvModel::drbcp_d;
  fail(ErrorKind::domain, "unknown cross-validation model '" + text + "'");
}

namespace {

CiReport summarize(const std::vector<double>& values) {
  if (values.size() == 1) return CiReport{values[0], 0.0, 0.95, CiMethod::asymptotic};
  return asymptotic_ci(values);
}

std::vector<Subset> solve_grid(const CombinatorialSystem& system, const ScenarioSet& train,
                               const std::vector<double>& grid, CvModel model) {
  std::vector<Subset> out;
  switch (model) {
    case CvModel::decision_robust:
      for (auto& rep : decision_robust_sweep(system, train, grid)) out.push_back(rep.x);
      break;
    case CvModel::tv_decision:
      for (double d : grid) out.push_back(tv_decision(system, train, d).x);
      break;
    case CvModel::drbcp_d: {
      Subset x = saa_d(system, train).x;
      out.assign(grid.size(), x);
      break;
    }
  }
  return out;
}

}  // namespace

CrossValReport cross_validate(const CombinatorialSystem& system, const ScenarioSet& scenarios, std::vector<double> grid,
                              int train_size, int repeats, std::uint64_t seed, CvModel model, Execution exec) {
  require(!grid.empty(), ErrorKind::domain, "grid is empty");
  require(std::is_sorted(grid.begin(), grid.end()), ErrorKind::domain, "grid must be sorted ascending");
  require(repeats >= 1, ErrorKind::domain, "repeats must be >= 1");
  require(train_size >= 1 && train_size < scenarios.N, ErrorKind::domain,
          "train size must lie in [1, N) so both splits are nonempty");

  const std::size_t G = grid.size();
  std::vector<std::vector<double>> means(G, std::vector<double>(repeats)), variances = means;
  detail::parallel_for(repeats, exec, [&](int rep) {
    Rng rng(seed, static_cast<std::uint64_t>(rep) + 1);
    std::vector<int> order(scenarios.N);
    std::iota(order.begin(), order.end(), 0);
    for (int i = scenarios.N - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    std::vector<int> train(order.begin(), order.begin() + train_size), test(order.begin() + train_size, order.end());
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    const ScenarioSet train_set = scenarios.subset(train), test_set = scenarios.subset(test);
    const auto chosen = solve_grid(system, train_set, grid, model);
    for (std::size_t g = 0; g < G; ++g) {
      const auto values = scenario_values(test_set, chosen[g]);
      means[g][rep] = canonical_mean(values);
      variances[g][rep] = population_variance(values);
    }
  });

  CrossValReport report;
  report.model = model;
  report.repeats = repeats;
  report.train_size = train_size;
  report.test_size = scenarios.N - train_size;
  for (std::size_t g = 0; g < G; ++g) report.points.push_back({grid[g], summarize(means[g]), summarize(variances[g])});

  const CiReport& base = report.points.front().mean_ci;
  const CvPoint* best = nullptr;
  for (const CvPoint& p : report.points) {
    const bool overlaps = std::abs(p.mean_ci.point - base.point) <= p.mean_ci.half_width + base.half_width;
    if (overlaps && (!best || p.variance_ci.point < best->variance_ci.point)) best = &p;
  }
  report.recommended = best->theta;
  return report;
}

CoverageReport coverage_experiment(const CombinatorialSystem& system, const ScenarioDraw& draw, int N, int trials,
                                   std::uint64_t seed, const RadiusRule& rule, CoverageKind kind, double r,
                                   Sense sense, int reference_samples, Execution exec) {
  require(trials >= 1, ErrorKind::domain, "trials must be >= 1");
  require(N >= 1 && reference_samples >= 2, ErrorKind::domain, "need N >= 1 and at least 2 reference samples");
  require(kind == CoverageKind::U || sense == Sense::cost, ErrorKind::domain,
          "decision coverage is defined for the cost sense");

  CoverageReport report;
  report.trials = trials;
  Rng reference_rng(seed, 0);
  const ScenarioSet reference = draw(reference_rng, reference_samples);
  require(reference.n == system.size(), ErrorKind::dimension, "generator width differs from the ground set size");
  std::vector<double> truth;
  if (kind == CoverageKind::U) {
    truth = bottleneck_values(system, reference, sense, exec);
  } else {
    truth = scenario_values(reference, saa_d(system, reference).x);
  }
  report.reference = canonical_mean(truth);
  report.reference_error = sample_stddev(truth) / std::sqrt(static_cast<double>(truth.size()));

  std::vector<int> covered(trials), within(trials);
  report.thetas.assign(trials, 0.0);
  detail::parallel_for(trials, exec, [&](int i) {
    Rng rng(seed, static_cast<std::uint64_t>(i) + 1);
    const ScenarioSet sample = draw(rng, N);
    const double theta = rule(sample);
    report.thetas[i] = theta;
    double v;
    if (kind == CoverageKind::U)
      v = drbcp_u(system, sample, AmbiguityConfig::wasserstein(theta, r), sense, Execution::serial).v_U;
    else
      v = drbcp_d(system, sample, theta).objective;
    const double gap = sense == Sense::cost ? v - report.reference : report.reference - v;
    covered[i] = gap >= 0.0;
    within[i] = gap <= 2.0 * theta;
  });
  report.covered = canonical_mean(std::vector<double>(covered.begin(), covered.end()));
  report.within = canonical_mean(std::vector<double>(within.begin(), within.end()));
  return report;
}

double estimate_sigma(std::span<const double> samples) {
  require(samples.size() >= 2, ErrorKind::domain, "sigma estimate needs at least 2 samples");
  for (double v : samples) require(std::isfinite(v), ErrorKind::domain, "samples must be finite");
  return sample_stddev(samples);
}

}  // namespace drbcp
