#include "drbcp/generators.hpp"

#include <cmath>
#include <fstream>

namespace drbcp {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed ^ (0xD1B54A32D192ED03ULL * (stream + 1));
  std::vector<std::uint32_t> words;
  for (int i = 0; i < 8; ++i) {
    std::uint64_t v = splitmix64(state);
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  engine_.seed(seq);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::exponential() { return -std::log(1.0 - uniform()); }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

int Rng::below(int bound) {
  require(bound > 0, ErrorKind::domain, "bound must be positive");
  const std::uint64_t b = static_cast<std::uint64_t>(bound);
  const std::uint64_t limit = (~0ULL) - (~0ULL) % b;
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return static_cast<int>(x % b);
}

void MultihopParams::validate() const {
  require(nodes >= 2, ErrorKind::domain, "multihop needs at least 2 nodes");
  require(bandwidth > 0 && noise > 0, ErrorKind::domain, "bandwidth and noise must be positive");
  require(power_lo > 0 && power_lo <= power_hi, ErrorKind::domain, "power range must be positive and ordered");
  require(distance_lo > 0 && distance_lo <= distance_hi, ErrorKind::domain,
          "distance range must be positive and ordered");
  require(N >= 1, ErrorKind::domain, "N must be >= 1");
  require(s >= 0 && t >= 0 && s < nodes && t < nodes && s != t, ErrorKind::domain, "bad source/target");
}

nlohmann::json MultihopParams::to_json() const {
  return {{"nodes", nodes},       {"bandwidth", bandwidth},     {"power", {power_lo, power_hi}},
          {"noise", noise},       {"distance", {distance_lo, distance_hi}}, {"N", N},
          {"seed", seed},         {"s", s},                     {"t", t}};
}

double multihop_snr(double power, double noise, double distance) {
  return power / noise * std::pow(10.0, -12.81 - 3.76 * std::log10(distance));
}

double shannon_capacity(double bandwidth, double snr, double fading) {
  return bandwidth * std::log2(1.0 + snr * fading);
}

GeneratedInstance gen_multihop(const MultihopParams& params) {
  params.validate();
  std::vector<Edge> edges;
  for (int u = 0; u < params.nodes; ++u)
    for (int v = u + 1; v < params.nodes; ++v) edges.push_back({u, v});

  Rng link(params.seed, 0);
  std::vector<double> snr;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    double p = link.uniform(params.power_lo, params.power_hi);
    double d = link.uniform(params.distance_lo, params.distance_hi);
    snr.push_back(multihop_snr(p, params.noise, d));
  }

  Rng fading(params.seed, 1);
  std::vector<std::vector<double>> rows(params.N, std::vector<double>(edges.size()));
  for (auto& row : rows)
    for (std::size_t e = 0; e < edges.size(); ++e)
      row[e] = shannon_capacity(params.bandwidth, snr[e], fading.exponential());

  const int n = static_cast<int>(edges.size());
  GeneratedInstance out{CombinatorialSystem::path(params.nodes, std::move(edges), params.s, params.t),
                        ScenarioSet(n, std::move(rows), "gen_multihop"),
                        {{"generator", "gen_multihop"}, {"rng", Rng::kName}, {"params", params.to_json()}}};
  return out;
}

void TruncGaussParams::validate() const {
  require(m >= 1, ErrorKind::domain, "m must be >= 1");
  const std::size_t cells = static_cast<std::size_t>(m) * m;
  require(mean.size() == cells && base_std.size() == cells, ErrorKind::dimension,
          "mean and std vectors must have m*m entries");
  require(alpha > 0, ErrorKind::domain, "alpha must be positive");
  require(N >= 1, ErrorKind::domain, "N must be >= 1");
  for (double s : base_std) require(s >= 0 && std::isfinite(s), ErrorKind::domain, "std must be finite and >= 0");
}

nlohmann::json TruncGaussParams::to_json() const {
  return {{"m", m}, {"mean", mean}, {"base_std", base_std}, {"alpha", alpha}, {"N", N}, {"seed", seed}};
}

double truncated_normal(Rng& rng, double mean, double sd) {
  if (sd == 0.0) {
    require(mean >= 0.0, ErrorKind::domain, "degenerate draw below zero");
    return mean;
  }
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    double x = mean + sd * rng.normal();
    if (x >= 0.0) return x;
  }
  fail(ErrorKind::numerical_convergence, "truncated normal rejection did not accept");
}

GeneratedInstance gen_matching_gaussian(const TruncGaussParams& params) {
  params.validate();
  Rng rng(params.seed, 0);
  const int n = params.m * params.m;
  std::vector<std::vector<double>> rows(params.N, std::vector<double>(n));
  for (auto& row : rows)
    for (int j = 0; j < n; ++j) row[j] = truncated_normal(rng, params.mean[j], params.alpha * params.base_std[j]);
  return GeneratedInstance{CombinatorialSystem::assignment(params.m), ScenarioSet(n, std::move(rows), "gen_matching_gaussian"),
                           {{"generator", "gen_matching_gaussian"}, {"rng", Rng::kName}, {"params", params.to_json()}}};
}

void save_generated(const std::string& prefix, const GeneratedInstance& generated) {
  save_scenarios(prefix + ".csv", generated.scenarios);
  std::ofstream meta(prefix + ".meta.json");
  require(static_cast<bool>(meta), ErrorKind::domain, "cannot write " + prefix + ".meta.json");
  meta << generated.metadata.dump(2) << '\n';
}

}  // namespace drbcp
