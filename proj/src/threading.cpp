#include "robotkit/threading.hpp"

#include <cstdlib>
#include <thread>

namespace robot {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ROBOTKIT_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
#endif
}

}  // namespace robot
