#pragma once

#include <cstddef>
#include <functional>

namespace clover {

// Thread count used by parallel_for: min(CLOVER_THREADS, hardware), at least 1.
int thread_count();

// Runs fn(i) for i in [0, n). Work is split into contiguous blocks; fn must be
// safe to call concurrently for distinct i. Falls back to a plain loop when
// n is small or only one thread is available.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace clover
