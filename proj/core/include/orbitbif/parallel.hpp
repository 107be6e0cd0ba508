#ifndef ORBITBIF_PARALLEL_HPP
#define ORBITBIF_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace orbitbif {

// Process-wide worker count used by parallel_map. Defaults to 1; results are
// identical for every setting because work items are independent and merged
// in index order.
inline std::atomic<int>& detail_thread_count() {
  static std::atomic<int> n{1};
  return n;
}
inline void set_thread_count(int n) { detail_thread_count() = n < 1 ? 1 : n; }
inline int thread_count() { return detail_thread_count().load(); }

// Index-ordered parallel map: out[i] = fn(i). The partitioning of indices to
// workers never affects the result, only wall time.
template <typename T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  const int workers = thread_count();
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto run = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int spawn = static_cast<int>(std::min<std::size_t>(workers, n));
  pool.reserve(spawn);
  for (int t = 0; t < spawn; ++t) pool.emplace_back(run);
  for (auto& th : pool) th.join();
  if (failed.load()) std::rethrow_exception(error);
  return out;
}

}  // namespace orbitbif

#endif
