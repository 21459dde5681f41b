#pragma once

#include <cmath>

#include "drbcp/errors.hpp"

namespace drbcp::detail {

// sigma * sqrt(-3 log(epsilon) + extra) / sqrt(N)
inline double concentration_rate(int N, double sigma, double epsilon, double extra = 0.0) {
  require(N >= 1, ErrorKind::domain, "sample size must be positive");
  require(std::isfinite(sigma) && sigma > 0.0, ErrorKind::domain, "sigma must be positive");
  require(epsilon > 0.0 && epsilon < 1.0, ErrorKind::domain, "epsilon must lie in (0, 1)");
  return sigma * std::sqrt(-3.0 * std::log(epsilon) + extra) / std::sqrt(static_cast<double>(N));
}

}  // namespace drbcp::detail
