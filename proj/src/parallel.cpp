#include "relaxoc/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace relaxoc::par {

namespace {
Exec g_default = Exec::Parallel;
}

Exec default_exec() { return g_default; }

void set_default(Exec e) { g_default = e; }

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace relaxoc::par
