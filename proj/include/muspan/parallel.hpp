#pragma once

#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace muspan {

// Serial reference for the parallel kernels below; kept separate so tests
// and the benchmark can compare the two paths directly.
template <typename T, typename F>
auto serial_map(const std::vector<T>& items, F&& fn)
    -> std::vector<std::decay_t<std::invoke_result_t<F&, const T&>>> {
  std::vector<std::decay_t<std::invoke_result_t<F&, const T&>>> out(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
  return out;
}

// Order-stable data-parallel map: out[i] is always fn(items[i]) regardless of
// worker count. workers <= 1 runs the serial path; workers == 0 would also be
// serial, use a positive count for the OpenMP pool. fn must be safe to call
// concurrently on distinct items.
template <typename T, typename F>
auto parallel_map(const std::vector<T>& items, F&& fn, int workers)
    -> std::vector<std::decay_t<std::invoke_result_t<F&, const T&>>> {
#ifdef _OPENMP
  if (workers > 1) {
    std::vector<std::decay_t<std::invoke_result_t<F&, const T&>>> out(items.size());
    std::exception_ptr err = nullptr;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(items.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(workers)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = fn(items[static_cast<std::size_t>(i)]);
      } catch (...) {
#pragma omp critical(muspan_parallel_map_err)
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    return out;
  }
#else
  (void)workers;
#endif
  return serial_map(items, fn);
}

inline int hardware_workers() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace muspan
