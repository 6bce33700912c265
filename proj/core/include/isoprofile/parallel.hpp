#ifndef ISOPROFILE_PARALLEL_HPP
#define ISOPROFILE_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace isoprofile {

inline int default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 16u));
}

/// Runs fn(i) for i in [0, count) on up to `workers` threads.
///
/// Jobs are claimed from a shared counter, so results must be written into
/// per-index slots by the caller; merging in index order keeps outputs
/// deterministic for any worker count.
template <typename Fn>
void parallel_for_index(std::size_t count, int workers, Fn&& fn) {
  workers = std::max(1, workers);
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto body = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int nthreads = static_cast<int>(
      std::min<std::size_t>(count, static_cast<std::size_t>(workers)));
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace isoprofile

#endif
