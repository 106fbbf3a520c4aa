#include "adaptmhd/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace adaptmhd::parallel {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int apply_thread_env() {
  if (const char* env = std::getenv("ADAPTMHD_NUM_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) set_threads(n);
    } catch (const std::exception&) {
      // ignored: malformed values leave the runtime default
    }
  }
  return max_threads();
}

}  // namespace adaptmhd::parallel
