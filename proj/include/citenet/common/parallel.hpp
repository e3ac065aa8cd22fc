#pragma once

#include <cstddef>
#include <functional>

namespace citenet {

/// Worker count used by the parallel kernels. 0 means hardware concurrency.
void set_thread_count(unsigned threads);
unsigned thread_count();

/// Runs `task(block)` for every block in [0, blocks) on the worker pool.
/// Callers keep results per block and reduce them in block order, so the
/// outcome never depends on the number of workers.
void for_each_block(std::size_t blocks, const std::function<void(std::size_t)>& task);

}  // namespace citenet
