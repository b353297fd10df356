#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace pauli {

/// Worker count for data-parallel loops. Initialised from PAULI_THREADS
/// (default 1); reductions never go through parallel_for, so results do
/// not depend on this value.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Calls fn(begin, end) over disjoint chunks of [0, n).
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min(thread_count(), n / 4096 + 1);
  if (workers <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t begin = std::min(n, w * chunk);
    const std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  fn(std::size_t{0}, std::min(n, chunk));
}

}  // namespace pauli
