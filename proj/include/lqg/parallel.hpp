#pragma once

#include <cstdint>
#include <exception>

namespace lqg {

/// Runs fn(i) for i in [0,n), across OpenMP threads when `parallel`. The first exception thrown
/// by any replica is rethrown after the loop.
template <class Fn>
void for_each_replica(std::size_t n, bool parallel, Fn&& fn) {
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace lqg
