#include "seppack/core.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sep::threads {

namespace {

int hardware_default() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
#else
  int n = static_cast<int>(std::thread::hardware_concurrency());
#endif
  if (const char* env = std::getenv("SEP_PACK_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) n = v;
  }
  return n > 0 ? n : 1;
}

std::atomic<int> g_max{0};  // 0 = unset, use hardware default

}  // namespace

void set_max(int n) { g_max.store(n > 0 ? n : 0); }

int max() {
  int v = g_max.load();
  return v > 0 ? v : hardware_default();
}

int resolve(int requested) { return requested > 0 ? requested : max(); }

}  // namespace sep::threads
