#include "graftlab/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace graftlab {

int thread_limit() {
  static const int limit = [] {
    if (const char* env = std::getenv("GRAFTLAB_THREADS")) {
      try {
        const int n = std::stoi(env);
        if (n > 0) return n;
      } catch (const std::exception&) {
      }
    }
    return omp_get_max_threads();
  }();
  return limit;
}

}  // namespace graftlab
