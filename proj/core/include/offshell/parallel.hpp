#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace offshell {

/// Worker count: the override if set, else OFFSHELL_GF_THREADS, else the
/// hardware concurrency. Always >= 1.
std::size_t thread_count();

/// 0 clears the override.
void set_thread_count(std::size_t n);

/// Runs body(i) for i in [0, n). Each index writes only its own slot, so the
/// result never depends on how indices were scheduled across workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

template <typename T, typename F>
std::vector<T> parallel_map(std::size_t n, F&& fn) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace offshell
