#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace tcspan {

/// Worker count: the explicit request if positive, otherwise TCSPAN_THREADS,
/// otherwise 1.
inline unsigned resolve_threads(unsigned requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TCSPAN_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

/// Runs body(worker, begin, end) over contiguous blocks of [0, count).
inline void parallel_blocks(std::size_t count, unsigned threads,
                            const std::function<void(unsigned, std::size_t, std::size_t)>& body) {
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    body(0, 0, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t begin = count * w / threads;
    const std::size_t end = count * (w + 1) / threads;
    pool.emplace_back(body, w, begin, end);
  }
  for (auto& t : pool) t.join();
}

}  // namespace tcspan
