#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "drbcp/decision.hpp"
#include "drbcp/generators.hpp"
#include "drbcp/uncertainty.hpp"

namespace drbcp {

enum class CiMethod { asymptotic, theoretical_u, theoretical_d, theoretical_gamma_u, theoretical_gamma_d };
const char* to_string(CiMethod method);

struct CiReport {
  double point = 0.0;
  double half_width = 0.0;
  double level = 0.95;
  CiMethod method = CiMethod::asymptotic;
  double lower() const { return point - half_width; }
  double upper() const { return point + half_width; }
};

// mean +- z s / sqrt(N), s with divisor N-1; z = 1.96 at level 0.95.
CiReport asymptotic_ci(std::span<const double> values, double level = 0.95);

enum class RadiusKind { U, D, D_single, gamma_U, gamma_D };

struct StructuralArgs {
  int max_blocker_size = 1;  // U
  int max_union_size = 1;    // gamma_U
  int n = 0;                 // D, gamma_D
  int gamma = 1;
  double r = 1.0;
};

// point +- radius(kind); level is 1 - 2 epsilon.
CiReport theoretical_ci(double point, int N, double sigma, double epsilon, RadiusKind kind,
                        const StructuralArgs& args = {});

enum class CiEndpoint { lower, upper };

// Smallest grid theta whose value has entered the CI band. Capacity values must
// fall below the endpoint (default upper), cost values rise above it (default lower).
std::optional<double> theta_star(const std::vector<std::pair<double, double>>& curve, const CiReport& ci,
                                 Sense orientation, std::optional<CiEndpoint> endpoint = std::nullopt);

enum class CvModel { decision_robust, tv_decision, drbcp_d };
const char* to_string(CvModel model);
CvModel parse_cv_model(const std::string& text);

struct CvPoint {
  double theta = 0.0;
  CiReport mean_ci;
  CiReport variance_ci;
};

struct CrossValReport {
  CvModel model = CvModel::decision_robust;
  std::vector<CvPoint> points;
  double recommended = 0.0;
  int repeats = 0;
  int train_size = 0;
  int test_size = 0;
};

// Random train/test splits. For tv_decision the grid holds d values. The
// recommendation is the lowest test variance among grid points whose test-mean
// CI overlaps the first grid point's, smallest value on ties.
CrossValReport cross_validate(const CombinatorialSystem& system, const ScenarioSet& scenarios,
                              std::vector<double> grid, int train_size, int repeats, std::uint64_t seed,
                              CvModel model, Execution exec = Execution::parallel);

using ScenarioDraw = std::function<ScenarioSet(Rng& rng, int N)>;
using RadiusRule = std::function<double(const ScenarioSet& sample)>;

enum class CoverageKind { U, D };

struct CoverageReport {
  double covered = 0.0;  // frequency of v >= v^T (v <= v^T for capacity)
  double within = 0.0;   // frequency of |v - v^T| <= 2 theta on the robust side
  double reference = 0.0;
  double reference_error = 0.0;
  int trials = 0;
  std::vector<double> thetas;
};

CoverageReport coverage_experiment(const CombinatorialSystem& system, const ScenarioDraw& draw, int N, int trials,
                                   std::uint64_t seed, const RadiusRule& rule, CoverageKind kind, double r = 1.0,
                                   Sense sense = Sense::cost, int reference_samples = 100000,
                                   Execution exec = Execution::parallel);

// Sample standard deviation.
double estimate_sigma(std::span<const double> samples);

}  // namespace drbcp
