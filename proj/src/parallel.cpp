#include "formatheory/parallel.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace formatheory::par {

namespace {
std::atomic<int> g_threads{0};  // 0 = hardware default
}

void set_threads(int n) { g_threads.store(n < 0 ? 0 : n); }

int threads() {
  int n = g_threads.load();
#ifdef _OPENMP
  if (n == 0) n = omp_get_max_threads();
#else
  if (n == 0) n = 1;
#endif
  return n;
}

bool enabled() { return threads() > 1; }

}  // namespace formatheory::par
