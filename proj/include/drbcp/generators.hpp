#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "drbcp/instances.hpp"
#include "drbcp/scenarios.hpp"

namespace drbcp {

// mt19937_64 seeded through SplitMix64 from (seed, stream). Variates are built
// from raw 64-bit outputs so streams are identical across standard libraries.
class Rng {
 public:
  static constexpr const char* kName = "mt19937_64/splitmix64";

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // -ln U with U in (0, 1].
  double exponential();
  // Marsaglia polar method.
  double normal();
  int below(int bound);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct GeneratedInstance {
  CombinatorialSystem system;
  ScenarioSet scenarios;
  nlohmann::json metadata;
};

struct MultihopParams {
  int nodes = 20;
  double bandwidth = 1.0;
  double power_lo = 0.1;
  double power_hi = 0.2;
  double noise = 1e-10;
  double distance_lo = 0.03;
  double distance_hi = 0.07;
  int N = 100;
  std::uint64_t seed = 0;
  int s = 0;
  int t = 1;

  void validate() const;
  nlohmann::json to_json() const;
};

// Signal-to-noise ratio for transmit power p, noise and distance d (km).
double multihop_snr(double power, double noise, double distance);
// B log2(1 + snr * fading).
double shannon_capacity(double bandwidth, double snr, double fading);

GeneratedInstance gen_multihop(const MultihopParams& params);

struct TruncGaussParams {
  int m = 0;
  std::vector<double> mean;       // m*m, row-major cells
  std::vector<double> base_std;   // m*m
  double alpha = 1.0;
  int N = 0;
  std::uint64_t seed = 0;

  void validate() const;
  nlohmann::json to_json() const;
};

GeneratedInstance gen_matching_gaussian(const TruncGaussParams& params);

// Normal(mean, sd) conditioned on [0, inf), by rejection.
double truncated_normal(Rng& rng, double mean, double sd);

// Writes PREFIX.csv and PREFIX.meta.json.
void save_generated(const std::string& prefix, const GeneratedInstance& generated);

}  // namespace drbcp
