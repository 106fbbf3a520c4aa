#pragma once

#include <cstddef>
#include <cstdint>

namespace adaptmhd::parallel {

// Runs body(i) for i in [0, n). Iterations are independent; the OpenMP
// schedule is static so results never depend on the thread count.
template <class Body>
void for_each(std::size_t n, Body&& body) {
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    body(static_cast<std::size_t>(i));
  }
}

int max_threads();
void set_threads(int n);
// Applies ADAPTMHD_NUM_THREADS if set; returns the active cap.
int apply_thread_env();

}  // namespace adaptmhd::parallel
