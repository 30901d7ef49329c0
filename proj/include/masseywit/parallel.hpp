#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace masseywit {

/// Static partition of [0, total) into at most `jobs` contiguous ranges, one
/// worker thread each. Callers own result placement (write by index), so the
/// outcome is independent of the worker count.
inline void parallel_ranges(std::uint64_t total, unsigned jobs,
                            const std::function<void(std::uint64_t, std::uint64_t)>& run) {
  if (total == 0) return;
  if (jobs <= 1 || total == 1) {
    run(0, total);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(jobs, total));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = total / workers, extra = total % workers;
  std::uint64_t lo = 0;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t hi = lo + chunk + (w < extra ? 1 : 0);
    pool.emplace_back([&run, lo, hi] { run(lo, hi); });
    lo = hi;
  }
  for (auto& t : pool) t.join();
}

template <class F>
void parallel_for(std::uint64_t count, unsigned jobs, F&& f) {
  parallel_ranges(count, jobs, [&f](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) f(i);
  });
}

}  // namespace masseywit
