#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace stc::detail {

template <class Fn>
void parallel_for(unsigned threads, std::size_t count, Fn&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2) {
    fn(0u, std::size_t(0), count);
    return;
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::thread> th;
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t lo = t * chunk, hi = std::min(count, lo + chunk);
    th.emplace_back([&fn, t, lo, hi] { fn(t, lo, hi); });
  }
  for (auto& x : th) x.join();
}


}  // namespace stc::detail
