#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace robot {

// Resolves a worker-count request: >0 is taken as-is, 0 means "auto"
// (ROBOTKIT_THREADS env var if set, otherwise the hardware default).
int resolve_threads(int requested);

// Data-parallel loop over [0, n). threads == 1 is the serial reference path;
// any other count runs the OpenMP kernel. Bodies must write only to
// disjoint, preallocated slots so results are identical for every thread
// count; reductions belong after the loop.
template <typename F>
void parallel_for(int64_t n, int threads, F&& body) {
#ifdef _OPENMP
  if (threads != 1 && n > 1) {
#pragma omp parallel for schedule(static) num_threads(threads)
    for (int64_t i = 0; i < n; ++i) {
      body(i);
    }
    return;
  }
#else
  (void)threads;
#endif
  for (int64_t i = 0; i < n; ++i) {
    body(i);
  }
}

}  // namespace robot
