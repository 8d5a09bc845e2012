#include "lforge/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lforge {

void apply_thread_cap() {
#ifdef _OPENMP
  const char* env = std::getenv("LFORGE_THREADS");
  if (env == nullptr) return;
  int cap = 0;
  try {
    cap = std::stoi(env);
  } catch (...) {
    return;
  }
  if (cap < 1) cap = 1;
  if (cap < omp_get_max_threads()) omp_set_num_threads(cap);
#endif
}

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace lforge
