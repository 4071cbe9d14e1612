#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace graftlab {

enum class Execution { Serial, Parallel };

// Thread cap: GRAFTLAB_THREADS when set to a positive integer, else the OpenMP default.
int thread_limit();

// Runs body(i) for i in [0, n). The parallel path uses an OpenMP dynamic schedule; the first
// exception thrown by any iteration is rethrown after the loop.
template <class Body>
void for_each_index(std::size_t n, Execution ex, Body&& body) {
  if (ex == Execution::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(thread_limit())
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace graftlab
