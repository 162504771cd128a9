#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace semiflux {

/// Worker count: SEMIFLUX_THREADS when set to a positive integer, otherwise
/// the hardware concurrency.
inline unsigned thread_budget() {
  if (const char* env = std::getenv("SEMIFLUX_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return unsigned(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates fn(i) for i in [0, n) on up to `threads` workers. Results are
/// stored by index, so any reduction over them runs in a fixed order. The
/// first exception (by index) is rethrown.
template <class R, class F>
std::vector<R> parallel_map(std::size_t n, F fn, unsigned threads = thread_budget()) {
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned k = std::max(1u, std::min<unsigned>(threads, unsigned(n)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < k; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace semiflux
