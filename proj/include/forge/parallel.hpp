#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace forge {

/// Worker count for internal parallel loops. Results never depend on it.
struct Parallelism {
  unsigned threads = 1;
};

/// Runs body(chunk, begin, end) over a static partition of [0, count).
/// Chunk boundaries depend only on (count, threads), so callers that merge
/// per-chunk results in chunk order get thread-independent output.
template <class Body>
void parallel_chunks(std::size_t count, Parallelism par, Body&& body) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(par.threads, count));
  if (workers <= 1) {
    if (count > 0) body(std::size_t{0}, std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] {
      try {
        body(w, begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

template <class Body>
void parallel_for(std::size_t count, Parallelism par, Body&& body) {
  parallel_chunks(count, par, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) body(i);
  });
}

}  // namespace forge
