#include "sqcert/parallel.hpp"

#include <algorithm>
#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sqcert {

namespace {
std::atomic<int> g_threads{0};
}

void set_global_threads(int n) { g_threads.store(n < 0 ? 0 : n); }

int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int global_threads() {
  const int n = g_threads.load();
  return n == 0 ? hardware_threads() : n;
}

namespace detail {

void run_parallel_for(std::int64_t count, void* ctx, void (*body)(void*, std::int64_t)) {
#ifdef _OPENMP
  const int threads = std::min<std::int64_t>(global_threads(), std::max<std::int64_t>(count, 1));
  if (threads > 1) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t i = 0; i < count; ++i) body(ctx, i);
    return;
  }
#endif
  for (std::int64_t i = 0; i < count; ++i) body(ctx, i);
}

}  // namespace detail

}  // namespace sqcert
