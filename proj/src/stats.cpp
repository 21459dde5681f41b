#include "drbcp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "drbcp/errors.hpp"

namespace drbcp {

double canonical_mean(std::span<const double> values) {
  require(!values.empty(), ErrorKind::domain, "mean of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  for (double v : sorted) total += v;
  return total / static_cast<double>(sorted.size());
}

double population_variance(std::span<const double> values) {
  const double mean = canonical_mean(values);
  std::vector<double> squares(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) squares[i] = (values[i] - mean) * (values[i] - mean);
  return canonical_mean(squares);
}

double sample_stddev(std::span<const double> values) {
  require(values.size() >= 2, ErrorKind::domain, "standard deviation needs at least two values");
  const double n = static_cast<double>(values.size());
  return std::sqrt(population_variance(values) * n / (n - 1.0));
}

double top_sum(std::span<const double> values, int count) {
  require(count >= 1 && count <= static_cast<int>(values.size()), ErrorKind::domain,
          "top-sum size must lie in [1, |values|]");
  std::vector<double> sorted(values.begin(), values.end());
  std::partial_sort(sorted.begin(), sorted.begin() + count, sorted.end(), std::greater<>());
  double total = 0.0;
  for (int i = 0; i < count; ++i) total += sorted[i];
  return total;
}

}  // namespace drbcp
