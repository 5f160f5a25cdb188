#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace mvphase {

/// Worker count: explicit argument if nonzero, else MVPHASE_THREADS, else
/// hardware concurrency (at least 1).
inline unsigned resolve_thread_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MVPHASE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Run fn(begin, end) over [0, n) split into fixed-size blocks claimed from an
/// atomic counter. Block boundaries do not depend on the worker count, so any
/// per-block state derived from indices is scheduling-independent.
template <typename Fn>
void parallel_for_blocks(std::size_t n, std::size_t block, unsigned threads, Fn&& fn) {
    if (n == 0) return;
    threads = resolve_thread_count(threads);
    const std::size_t nblocks = (n + block - 1) / block;
    if (threads <= 1 || nblocks <= 1) {
        for (std::size_t b = 0; b < nblocks; ++b)
            fn(b * block, std::min(n, (b + 1) * block));
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            fn(b * block, std::min(n, (b + 1) * block));
        }
    };
    std::vector<std::thread> pool;
    const unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(threads, nblocks));
    pool.reserve(spawn - 1);
    for (unsigned t = 1; t < spawn; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

}  // namespace mvphase
