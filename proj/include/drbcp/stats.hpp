#pragma once

#include <span>
#include <vector>

namespace drbcp {

// Mean of the values summed in ascending order, so the result does not depend on
// the order the values arrive in.
double canonical_mean(std::span<const double> values);

// Population variance (divisor N) around canonical_mean.
double population_variance(std::span<const double> values);

// Sample standard deviation (divisor N-1).
double sample_stddev(std::span<const double> values);

// Sum of the `count` largest values, added largest first.
double top_sum(std::span<const double> values, int count);

}  // namespace drbcp
