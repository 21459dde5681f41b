#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "drbcp/bottleneck.hpp"
#include "drbcp/calibration.hpp"
#include "drbcp/decision.hpp"
#include "drbcp/gamma.hpp"
#include "drbcp/generators.hpp"
#include "drbcp/io.hpp"
#include "drbcp/members.hpp"
#include "drbcp/q_wasserstein.hpp"
#include "drbcp/stats.hpp"
#include "drbcp/uncertainty.hpp"

using namespace drbcp;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string model;
  std::string instance;
  std::string scenarios;
  std::vector<double> thetas;
  std::string theta_grid;
  double q = std::numeric_limits<double>::infinity();
  double r = 1.0;
  double d = 0.0;
  int gamma = 1;
  std::string sense = "cost";
  std::uint64_t seed = 0;
  std::string out = "drbcp_out";
  bool force_enumeration = false;

  // calibrate
  std::string calibration = "theta-star";
  std::string cv_model = "decision_robust";
  int train_size = 0;
  int repeats = 50;
  double epsilon = 0.025;
  std::string endpoint;
  // simulate
  std::string generator = "multihop";
  int nodes = 20;
  int samples = 100;
  double alpha = 1.0;
  // evaluate
  std::string subset;
};

std::vector<double> parse_grid(const std::string& text) {
  // "a:b:step" or "a,b,c"
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double lo, hi, step;
    char c1, c2;
    std::istringstream in(text);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || step <= 0 || hi < lo) fail(ErrorKind::domain, "bad grid '" + text + "'");
    const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
    for (int i = 0; i <= count; ++i) out.push_back(lo + i * step);
  } else {
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(std::stod(item));
  }
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stoi(item));
  return out;
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void save(const std::string& path) const {
    std::ofstream out(path);
    require(static_cast<bool>(out), ErrorKind::domain, "cannot write " + path);
    for (std::size_t i = 0; i < header_.size(); ++i) out << (i ? "," : "") << header_[i];
    out << '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << '\n';
    }
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string num(double v) { return format_double(v); }

std::string seconds(std::chrono::steady_clock::duration d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::chrono::duration<double>(d).count());
  return buf;
}

std::string join(const Subset& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? " " : "") + std::to_string(x[i]);
  return s;
}

template <class F>
auto timed(F f, std::string& wall) {
  auto start = std::chrono::steady_clock::now();
  auto result = f();
  wall = seconds(std::chrono::steady_clock::now() - start);
  return result;
}

struct Inputs {
  CombinatorialSystem system;
  ScenarioSet scenarios;
};

Inputs load_inputs(const RunConfig& cfg) {
  require(!cfg.instance.empty(), ErrorKind::domain, "--instance is required");
  require(!cfg.scenarios.empty(), ErrorKind::domain, "--scenarios is required");
  CombinatorialSystem system = load_instance(cfg.instance);
  return {system, load_scenarios(cfg.scenarios, system.size())};
}

json base_summary(const RunConfig& cfg) {
  json doc = {{"schema", kResultSchema}, {"model", cfg.model}, {"r", cfg.r}, {"sense", cfg.sense},
              {"seed", cfg.seed}, {"thetas", cfg.thetas}};
  doc["q"] = std::isinf(cfg.q) ? json("inf") : json(cfg.q);
  return doc;
}

void finish(const RunConfig& cfg, const Table& table, const json& summary) {
  table.save(cfg.out + ".csv");
  write_json(cfg.out + ".json", summary);
}

double quantify_value(const Inputs& in, double theta, const RunConfig& cfg, Sense sense) {
  if (std::isinf(cfg.q)) return drbcp_u(in.system, in.scenarios, AmbiguityConfig::wasserstein(theta, cfg.r), sense).v_U;
  return q_wasserstein_u(in.system, in.scenarios, theta, cfg.q, cfg.r, sense).v_U;
}

void run_quantify(const RunConfig& cfg) {
  Inputs in = load_inputs(cfg);
  const Sense sense = parse_sense(cfg.sense);
  Table table({"theta", "v_U", "saa", "wall_seconds"});
  json summary = base_summary(cfg);
  const double saa = saa_u(in.system, in.scenarios, sense);
  json rows = json::array();
  for (double theta : cfg.thetas) {
    std::string wall;
    double v = timed([&] { return quantify_value(in, theta, cfg, sense); }, wall);
    table.add({num(theta), num(v), num(saa), wall});
    rows.push_back({{"theta", theta}, {"v_U", v}});
  }
  summary["saa"] = saa;
  summary["rows"] = rows;
  finish(cfg, table, summary);
}

void run_decide(const RunConfig& cfg) {
  Inputs in = load_inputs(cfg);
  Table table({"theta", "v_D", "saa", "x", "wall_seconds"});
  json summary = base_summary(cfg);
  json rows = json::array();
  for (double theta : cfg.thetas) {
    std::string wall;
    DecisionReport rep = timed([&] { return drbcp_d(in.system, in.scenarios, theta); }, wall);
    table.add({num(theta), num(rep.objective), num(rep.mean), join(rep.x), wall});
    json j = to_json(rep, &in.system);
    j["theta"] = theta;
    j["v_D"] = rep.objective;
    j["v_D_saa"] = rep.mean;
    rows.push_back(j);
  }
  summary["rows"] = rows;
  finish(cfg, table, summary);
}

void run_robust_decide(const RunConfig& cfg) {
  Inputs in = load_inputs(cfg);
  Table table({"theta", "mean", "variance", "threshold", "x", "wall_seconds"});
  json summary = base_summary(cfg);
  json rows = json::array();
  for (double theta : cfg.thetas) {
    std::string wall;
    DecisionReport rep = timed([&] { return decision_robust(in.system, in.scenarios, theta); }, wall);
    table.add({num(theta), num(rep.mean), num(rep.variance), num(*rep.threshold), join(rep.x), wall});
    json j = to_json(rep, &in.system);
    j["theta"] = theta;
    rows.push_back(j);
  }
  summary["rows"] = rows;
  finish(cfg, table, summary);
}

void run_tv_decide(const RunConfig& cfg) {
  Inputs in = load_inputs(cfg);
  Table table({"d", "objective", "mean", "x", "wall_seconds"});
  std::string wall;
  DecisionReport rep = timed([&] { return tv_decision(in.system, in.scenarios, cfg.d); }, wall);
  table.add({num(cfg.d), num(rep.objective), num(rep.mean), join(rep.x), wall});
  json summary = base_summary(cfg);
  summary["d"] = cfg.d;
  summary["report"] = to_json(rep, &in.system);
  finish(cfg, table, summary);
}

void run_gamma_quantify(const RunConfig& cfg) {
  Inputs in = load_inputs(cfg);
  Table table({"theta", "saa", "lower", "upper", "exact", "wall_seconds"});
  json summary = base_summary(cfg);
  summary["gamma"] = cfg.gamma;
  json rows = json::array();
  for (double theta : cfg.thetas) {
    std::string wall;
    GammaQuote g = timed([&] { return gamma_u(in.system, in.scenarios, theta, cfg.r, cfg.gamma); }, wall);
    table.add({num(theta), num(g.saa), num(g.lower), num(g.upper), g.exact ? num(*g.exact) : "", wall});
    json j = {{"theta", theta}, {"saa", g.saa}, {"lower", g.lower}, {"upper", g.upper},
              {"downgraded", g.downgraded}, {"max_union_size", g.max_union_size}};
    j["exact"] = g.exact ? json(*g.exact) : json(nullptr);
    rows.push_back(j);
  }
  summary["rows"] = rows;
  finish(cfg, table, summary);
}

void run_gamma_decide(const RunConfig& cfg) {
  Inputs in = load_inputs(cfg);
  Table table({"theta", "v_D", "saa", "x", "robust_x", "robust_variance", "wall_seconds"});
  json summary = base_summary(cfg);
  summary["gamma"] = cfg.gamma;
  json rows = json::array();
  for (double theta : cfg.thetas) {
    std::string wall;
    auto pair = timed(
        [&] {
          return std::pair{gamma_d(in.system, in.scenarios, theta, cfg.r, cfg.gamma),
                           gamma_decision_robust(in.system, in.scenarios, theta, cfg.r, cfg.gamma)};
        },
        wall);
    const auto& [plain, robust] = pair;
    table.add({num(theta), num(plain.objective), num(plain.mean), join(plain.x), join(robust.x), num(robust.variance), wall});
    rows.push_back({{"theta", theta}, {"gamma_d", to_json(plain, &in.system)},
                    {"gamma_decision_robust", to_json(robust, &in.system)}});
  }
  summary["rows"] = rows;
  finish(cfg, table, summary);
}

json ci_json(const CiReport& ci) {
  return {{"point", ci.point}, {"half_width", ci.half_width}, {"level", ci.level}, {"method", to_string(ci.method)}};
}

void run_calibrate(const RunConfig& cfg) {
  Inputs in = load_inputs(cfg);
  json summary = base_summary(cfg);
  if (cfg.calibration == "cv") {
    const int train = cfg.train_size > 0 ? cfg.train_size : (2 * in.scenarios.N) / 3;
    CrossValReport rep = cross_validate(in.system, in.scenarios, cfg.thetas, train, cfg.repeats, cfg.seed,
                                        parse_cv_model(cfg.cv_model));
    Table table({"theta", "test_mean", "test_mean_half_width", "test_variance", "test_variance_half_width"});
    json points = json::array();
    for (const auto& p : rep.points) {
      table.add({num(p.theta), num(p.mean_ci.point), num(p.mean_ci.half_width), num(p.variance_ci.point),
                 num(p.variance_ci.half_width)});
      points.push_back({{"theta", p.theta}, {"mean_ci", ci_json(p.mean_ci)}, {"variance_ci", ci_json(p.variance_ci)}});
    }
    summary["cv_model"] = to_string(rep.model);
    summary["points"] = points;
    summary["recommended_theta"] = rep.recommended;
    summary["repeats"] = rep.repeats;
    summary["train_size"] = rep.train_size;
    summary["test_size"] = rep.test_size;
    finish(cfg, table, summary);
    return;
  }
  require(cfg.calibration == "theta-star", ErrorKind::domain, "--calibration must be theta-star or cv");
  const Sense sense = parse_sense(cfg.sense);
  const auto values = bottleneck_values(in.system, in.scenarios, sense, Execution::parallel);
  const CiReport ci = asymptotic_ci(values);
  const double sigma = estimate_sigma(values);
  const auto bound = max_blocker_size(in.system);
  StructuralArgs args;
  args.max_blocker_size = bound.size;
  args.r = cfg.r;
  const CiReport theory = theoretical_ci(ci.point, in.scenarios.N, sigma, cfg.epsilon, RadiusKind::U, args);
  Table table({"theta", "v_U", "ci_lower", "ci_upper", "wall_seconds"});
  std::vector<std::pair<double, double>> curve;
  for (double theta : cfg.thetas) {
    std::string wall;
    double v = timed([&] { return quantify_value(in, theta, cfg, sense); }, wall);
    curve.push_back({theta, v});
    table.add({num(theta), num(v), num(ci.lower()), num(ci.upper()), wall});
  }
  std::optional<CiEndpoint> endpoint;
  if (cfg.endpoint == "lower") endpoint = CiEndpoint::lower;
  else if (cfg.endpoint == "upper") endpoint = CiEndpoint::upper;
  else require(cfg.endpoint.empty(), ErrorKind::domain, "--endpoint must be lower or upper");
  auto star = theta_star(curve, ci, sense, endpoint);
  summary["asymptotic_ci"] = ci_json(ci);
  summary["theoretical_ci"] = ci_json(theory);
  summary["sigma"] = sigma;
  summary["max_blocker_size"] = bound.size;
  summary["max_blocker_size_exact"] = bound.exact;
  summary["theta_star"] = star ? json(*star) : json(nullptr);
  finish(cfg, table, summary);
}

void run_simulate(const RunConfig& cfg) {
  GeneratedInstance gen = [&] {
    if (cfg.generator == "multihop") {
      MultihopParams p;
      p.nodes = cfg.nodes;
      p.N = cfg.samples;
      p.seed = cfg.seed;
      return gen_multihop(p);
    }
    require(cfg.generator == "matching", ErrorKind::domain, "--generator must be multihop or matching");
    require(!cfg.scenarios.empty(), ErrorKind::domain, "matching generator takes means and spreads from --scenarios");
    ScenarioSet base = load_scenarios(cfg.scenarios);
    const int m = static_cast<int>(std::lround(std::sqrt(base.n)));
    require(m * m == base.n, ErrorKind::dimension, "scenario width is not a square");
    TruncGaussParams p;
    p.m = m;
    p.alpha = cfg.alpha;
    p.N = cfg.samples;
    p.seed = cfg.seed;
    for (int j = 0; j < base.n; ++j) {
      std::vector<double> column;
      for (int k = 0; k < base.N; ++k) column.push_back(base.row(k)[j]);
      p.mean.push_back(canonical_mean(column));
      p.base_std.push_back(base.N >= 2 ? sample_stddev(column) : 0.0);
    }
    return gen_matching_gaussian(p);
  }();
  save_generated(cfg.out, gen);
  save_instance(cfg.out + ".instance.json", gen.system);
}

void run_evaluate(const RunConfig& cfg) {
  Inputs in = load_inputs(cfg);
  Subset x = parse_ints(cfg.subset);
  std::sort(x.begin(), x.end());
  DecisionReport rep = evaluate_subset(in.scenarios, x, cfg.gamma);
  Table table({"scenario", "value"});
  for (std::size_t k = 0; k < rep.per_scenario.size(); ++k) table.add({std::to_string(k), num(rep.per_scenario[k])});
  json summary = base_summary(cfg);
  summary["report"] = to_json(rep, &in.system);
  summary["asymptotic_ci"] = rep.per_scenario.size() >= 2 ? ci_json(asymptotic_ci(rep.per_scenario)) : json(nullptr);
  finish(cfg, table, summary);
}

// Cross-checks every fast path against enumeration of X.
void run_oracle(const RunConfig& cfg) {
  Inputs in = load_inputs(cfg);
  const auto members = brute_force_members(in.system, cfg.force_enumeration);
  const Clutter clutter = antichain_reduce(members, in.system.size());
  const auto blocker = blocker_enumerate(clutter, cfg.force_enumeration ? 64 : kBlockerEnumerationLimit);
  Table table({"check", "compared", "max_abs_diff"});
  long total = 0;
  auto check = [&](const std::string& name, long count, double diff, double tol) {
    table.add({name, std::to_string(count), num(diff)});
    total += count;
    require(diff <= tol, ErrorKind::invariant_violation, "oracle check '" + name + "' failed, difference " + num(diff));
  };

  double diff = 0.0, dual_diff = 0.0;
  for (int k = 0; k < in.scenarios.N; ++k) {
    auto c = in.scenarios.row(k);
    double brute = std::numeric_limits<double>::infinity();
    for (const auto& x : members) {
      double worst = -std::numeric_limits<double>::infinity();
      for (int j : x) worst = std::max(worst, c[j]);
      brute = std::min(brute, worst);
    }
    double dual = -std::numeric_limits<double>::infinity();
    for (const auto& y : blocker) {
      double low = std::numeric_limits<double>::infinity();
      for (int j : y.elements) low = std::min(low, c[j]);
      dual = std::max(dual, low);
    }
    diff = std::max(diff, std::abs(bottleneck_cost(in.system, c) - brute));
    dual_diff = std::max(dual_diff, std::abs(dual - brute));
  }
  check("bottleneck_primal", in.scenarios.N, diff, 0.0);
  check("bottleneck_dual", in.scenarios.N, dual_diff, 0.0);

  const std::vector<double> thetas = cfg.thetas.empty() ? std::vector<double>{0.0, 0.1, 1.0} : cfg.thetas;
  double robust_diff = 0.0;
  long robust_count = 0;
  for (double theta : thetas)
    for (int k = 0; k < in.scenarios.N; ++k) {
      auto c = in.scenarios.row(k);
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& y : blocker) {
        std::vector<double> sub;
        for (int j : y.elements) sub.push_back(c[j]);
        best = std::max(best, t_star_closed_form(sub, theta, cfg.r));
      }
      robust_diff = std::max(robust_diff, std::abs(robust_scenario_value(in.system, c, theta, cfg.r).t_star - best));
      ++robust_count;
    }
  check("robust_scenario_value", robust_count, robust_diff, 1e-9);

  double saa_brute = std::numeric_limits<double>::infinity();
  for (const auto& x : members) saa_brute = std::min(saa_brute, canonical_mean(scenario_values(in.scenarios, x)));
  check("saa_d", static_cast<long>(members.size()), std::abs(saa_d(in.system, in.scenarios).mean - saa_brute), 0.0);

  std::cout << "all checks passed (" << total << " values compared)\n";
  json summary = base_summary(cfg);
  summary["compared"] = total;
  summary["members"] = members.size();
  summary["blocker_elements"] = blocker.size();
  summary["status"] = "all checks passed";
  finish(cfg, table, summary);
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::enumeration_limit: return 2;
    case ErrorKind::invariant_violation:
    case ErrorKind::numerical_convergence: return 3;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributionally robust bottleneck combinatorial problems"};
  RunConfig cfg;
  double theta = std::numeric_limits<double>::quiet_NaN();
  std::string q_text = "inf";
  app.add_option("--model", cfg.model, "Pipeline to run")
      ->required()
      ->check(CLI::IsMember({"quantify", "decide", "robust-decide", "tv-decide", "gamma-quantify", "gamma-decide",
                             "calibrate", "simulate", "evaluate", "oracle"}));
  app.add_option("--instance", cfg.instance, "Instance JSON");
  app.add_option("--scenarios", cfg.scenarios, "Scenario CSV");
  app.add_option("--theta", theta, "Single radius");
  app.add_option("--theta-grid", cfg.theta_grid, "Radius grid: lo:hi:step or comma list");
  app.add_option("--q", q_text, "Wasserstein order (inf or >= 1)");
  app.add_option("--r", cfg.r, "Ground norm order");
  app.add_option("--d", cfg.d, "Total-variation radius");
  app.add_option("--gamma", cfg.gamma, "Gamma for sum-of-largest models");
  app.add_option("--sense", cfg.sense, "cost or capacity")->check(CLI::IsMember({"cost", "capacity"}));
  app.add_option("--seed", cfg.seed, "RNG seed");
  app.add_option("--out", cfg.out, "Output prefix for PREFIX.csv and PREFIX.json");
  app.add_flag("--force-enumeration", cfg.force_enumeration, "Ignore enumeration size guards");
  app.add_option("--calibration", cfg.calibration, "theta-star or cv");
  app.add_option("--cv-model", cfg.cv_model, "decision_robust, tv_decision or drbcp_d");
  app.add_option("--train-size", cfg.train_size, "Training split size");
  app.add_option("--repeats", cfg.repeats, "Cross-validation repeats");
  app.add_option("--epsilon", cfg.epsilon, "Theoretical CI epsilon");
  app.add_option("--endpoint", cfg.endpoint, "CI endpoint for theta*: lower or upper");
  app.add_option("--generator", cfg.generator, "multihop or matching");
  app.add_option("--nodes", cfg.nodes, "Multihop node count");
  app.add_option("--samples", cfg.samples, "Generated scenario count");
  app.add_option("--alpha", cfg.alpha, "Matching spread multiplier");
  app.add_option("--subset", cfg.subset, "Comma-separated element ids to evaluate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (q_text == "inf") cfg.q = std::numeric_limits<double>::infinity();
    else cfg.q = std::stod(q_text);
    if (!cfg.theta_grid.empty()) cfg.thetas = parse_grid(cfg.theta_grid);
    if (!std::isnan(theta)) cfg.thetas.push_back(theta);
    std::sort(cfg.thetas.begin(), cfg.thetas.end());
    const bool needs_theta = cfg.model == "quantify" || cfg.model == "decide" || cfg.model == "robust-decide" ||
                             cfg.model == "gamma-quantify" || cfg.model == "gamma-decide" || cfg.model == "calibrate";
    require(!needs_theta || !cfg.thetas.empty(), ErrorKind::domain, "--theta or --theta-grid is required");

    if (cfg.model == "quantify") run_quantify(cfg);
    else if (cfg.model == "decide") run_decide(cfg);
    else if (cfg.model == "robust-decide") run_robust_decide(cfg);
    else if (cfg.model == "tv-decide") run_tv_decide(cfg);
    else if (cfg.model == "gamma-quantify") run_gamma_quantify(cfg);
    else if (cfg.model == "gamma-decide") run_gamma_decide(cfg);
    else if (cfg.model == "calibrate") run_calibrate(cfg);
    else if (cfg.model == "simulate") run_simulate(cfg);
    else if (cfg.model == "evaluate") run_evaluate(cfg);
    else run_oracle(cfg);
  } catch (const Error& e) {
    std::cerr << "error[" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::invalid_argument& e) {
    std::cerr << "error[parse]: bad number: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
