#pragma once

#include <algorithm>
#include <thread>
#include <vector>

#include "dbtopo/core.hpp"

namespace dbtopo {

/// Runs body(i) for i in [0, n) on up to `threads` workers using contiguous blocks.
/// The body must only write to per-i state; results then do not depend on `threads`.
template <typename Body>
void parallel_for(Index n, unsigned threads, Body&& body) {
  unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<Index>(n, 1))));
  if (workers == 1) {
    for (Index i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  Index block = (n + static_cast<Index>(workers) - 1) / static_cast<Index>(workers);
  for (unsigned w = 0; w < workers; ++w) {
    Index lo = static_cast<Index>(w) * block;
    Index hi = std::min(n, lo + block);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (Index i = lo; i < hi; ++i) body(i);
    });
  }
}

}  // namespace dbtopo
