#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace hdad {

// Runs fn(i) for i in [0, n) across hardware threads in fixed contiguous
// chunks. Each index writes only its own output slot, so results are
// identical to a sequential loop regardless of thread count or scheduling.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t n_threads = hw == 0 ? 1 : hw;
  if (n_threads > n) n_threads = n == 0 ? 1 : n;
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  std::size_t chunk = (n + n_threads - 1) / n_threads;
  for (std::size_t t = 0; t < n_threads; ++t) {
    std::size_t lo = t * chunk;
    std::size_t hi = lo + chunk < n ? lo + chunk : n;
    if (lo >= hi) break;
    workers.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace hdad
