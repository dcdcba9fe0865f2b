#pragma once

#include <cstddef>
#include <functional>

namespace znlab {

// Worker-pool width used by the compute kernels. Defaults to
// ZNLAB_THREADS (env) or the hardware concurrency. Results never depend
// on this value: work is split into blocks of a fixed size and partial
// results are combined in block order.
unsigned thread_count();
void set_thread_count(unsigned n);

inline constexpr std::size_t kParallelBlock = 1024;

// Runs fn(begin, end, block_index) over [0, n) in blocks of kParallelBlock.
// Block boundaries are independent of the thread count.
void parallel_blocks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

inline std::size_t block_count(std::size_t n) {
    return (n + kParallelBlock - 1) / kParallelBlock;
}

}  // namespace znlab
