#ifndef TCID_PARALLEL_HPP
#define TCID_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace tcid {

/// Splits [0, n) into `threads` contiguous ranges and calls
/// fn(begin, end, worker) for each, joining before returning.  With one
/// thread the call happens inline.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    fn(std::size_t{0}, n, 0u);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::size_t step = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t b = std::min(n, t * step), e = std::min(n, b + step);
    pool.emplace_back([&fn, b, e, t] { fn(b, e, t); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace tcid

#endif  // TCID_PARALLEL_HPP
