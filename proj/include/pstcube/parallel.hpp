#pragma once

#include <cstddef>
#include <functional>

namespace pstcube {

// Worker count: min(hardware_concurrency, PSTCUBE_THREADS) with a floor of 1.
unsigned worker_count();

// Runs fn(i) for i in [0, count). Work is split into contiguous chunks; each
// index is executed exactly once, so writes to preallocated slots are
// deterministic regardless of scheduling. Exceptions from workers are
// rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace pstcube
