#pragma once

#include <cstdint>
#include <exception>
#include <mutex>
#include <utility>

namespace sqcert {

// Global worker count for the OpenMP kernels. 0 means "hardware default".
void set_global_threads(int n);
int global_threads();
int hardware_threads();

namespace detail {
void run_parallel_for(std::int64_t count, void* ctx, void (*body)(void*, std::int64_t));
}

// Parallel index loop. Callers must write results into per-index slots (or
// fold with an order-independent operation) so output never depends on the
// schedule. Exceptions thrown by the body are captured and rethrown once.
template <typename Fn>
void parallel_for(std::int64_t count, Fn&& fn) {
  using Body = std::remove_reference_t<Fn>;
  struct Ctx {
    Body* fn;
    std::exception_ptr error;
    std::mutex mu;
  } ctx{&fn, nullptr, {}};
  detail::run_parallel_for(count, &ctx, [](void* p, std::int64_t i) {
    auto* c = static_cast<Ctx*>(p);
    try {
      (*c->fn)(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(c->mu);
      if (!c->error) c->error = std::current_exception();
    }
  });
  if (ctx.error) std::rethrow_exception(ctx.error);
}

}  // namespace sqcert
