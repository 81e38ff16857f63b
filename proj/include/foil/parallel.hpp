#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace foil {

// Number of worker threads used by parallel_for. 1 (the default) runs
// everything inline on the caller.
void set_worker_threads(int n);
int worker_threads();

// Splits [0, n) into contiguous blocks, one per worker. Each invocation of
// `fn(begin, end)` must write only to slots it owns; results are then
// combined by the caller in index order, so the output is bitwise identical
// for any worker count.
template <typename F>
void parallel_for(std::size_t n, F&& fn) {
    const int workers = worker_threads();
    if (workers <= 1 || n < 2) {
        fn(static_cast<std::size_t>(0), n);
        return;
    }
    const std::size_t t = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
    const std::size_t chunk = (n + t - 1) / t;
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (std::size_t w = 0; w < t; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (std::thread& th : pool) th.join();
}

}  // namespace foil
