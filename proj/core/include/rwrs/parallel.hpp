#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace rwrs {

inline unsigned effective_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Splits [0, count) into contiguous chunks, one worker thread per chunk.
// Work items must write only to their own slots; the split never influences
// results, so output is identical for any thread count.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = effective_threads(threads);
  if (count == 0) return;
  if (threads <= 1 || count == 1) {
    fn(std::size_t{0}, count);
    return;
  }
  const std::size_t nchunk = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(nchunk);
  const std::size_t base = count / nchunk;
  const std::size_t rem = count % nchunk;
  std::size_t begin = 0;
  for (std::size_t c = 0; c < nchunk; ++c) {
    const std::size_t len = base + (c < rem ? 1 : 0);
    const std::size_t end = begin + len;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    begin = end;
  }
  for (auto& t : pool) t.join();
}

}  // namespace rwrs
