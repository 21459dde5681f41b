#pragma once

#include <exception>
#include <mutex>

#include "drbcp/uncertainty.hpp"

namespace drbcp::detail {

// Runs body(0..count-1); the first exception thrown by any worker is rethrown.
template <class Body>
void parallel_for(int count, Execution exec, Body body) {
  if (exec == Execution::serial) {
    for (int k = 0; k < count; ++k) body(k);
    return;
  }
  std::exception_ptr error;
  std::mutex guard;
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < count; ++k) {
    try {
      body(k);
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace drbcp::detail
