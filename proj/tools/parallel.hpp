#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace casimir::cli {

/// Worker count from CASIMIR_BHD_WORKERS, else the hardware concurrency.
unsigned worker_count();

/// Evaluate f(i) for i in [0, count) on `workers` threads. Results land in
/// index order, so the output does not depend on the worker count. The first
/// exception thrown by any f(i) (lowest index wins) is rethrown.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, unsigned workers, F&& f) {
  std::vector<T> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace casimir::cli
