#include "pauli/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace pauli {

namespace {

std::size_t initial_thread_count() {
  if (const char* env = std::getenv("PAULI_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::atomic<std::size_t>& threads() {
  static std::atomic<std::size_t> value{initial_thread_count()};
  return value;
}

}  // namespace

std::size_t thread_count() { return threads().load(std::memory_order_relaxed); }

void set_thread_count(std::size_t n) { threads().store(n == 0 ? 1 : n, std::memory_order_relaxed); }

}  // namespace pauli
