#include "znlab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace znlab {

namespace {

unsigned default_threads() {
    if (const char* env = std::getenv("ZNLAB_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

std::atomic<unsigned> g_threads{0};

}  // namespace

unsigned thread_count() {
    unsigned t = g_threads.load(std::memory_order_relaxed);
    if (t == 0) {
        t = default_threads();
        g_threads.store(t, std::memory_order_relaxed);
    }
    return t;
}

void set_thread_count(unsigned n) {
    g_threads.store(n ? n : 1, std::memory_order_relaxed);
}

void parallel_blocks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t nblocks = block_count(n);
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(thread_count(), nblocks));
    if (workers <= 1) {
        for (std::size_t b = 0; b < nblocks; ++b) {
            std::size_t lo = b * kParallelBlock;
            std::size_t hi = std::min(n, lo + kParallelBlock);
            fn(lo, hi, b);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            std::size_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= nblocks) break;
            std::size_t lo = b * kParallelBlock;
            std::size_t hi = std::min(n, lo + kParallelBlock);
            fn(lo, hi, b);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned i = 0; i + 1 < workers; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
}

}  // namespace znlab
