#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qpg {

/// Worker cap: QPG_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned thread_cap();

/// Splits [0, n) into consecutive chunks of `grain` items, evaluates
/// `map(begin, end)` for each chunk on up to thread_cap() threads, then folds
/// the chunk results left to right with `combine`. Chunk boundaries and the
/// fold order do not depend on the thread count, so floating-point results
/// are bit-identical for any QPG_THREADS.
template <typename Partial, typename Map, typename Combine>
Partial chunked_reduce(std::size_t n, std::size_t grain, Partial init, Map map, Combine combine) {
  grain = std::max<std::size_t>(grain, 1);
  const std::size_t chunks = (n + grain - 1) / grain;
  std::vector<Partial> partial(chunks, init);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_cap(), chunks));

  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = c * grain;
    partial[c] = map(begin, std::min(n, begin + grain));
  };
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t c = w; c < chunks; c += workers) run_chunk(c);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  for (auto& p : partial) init = combine(std::move(init), std::move(p));
  return init;
}

}  // namespace qpg
