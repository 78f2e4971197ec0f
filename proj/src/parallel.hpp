#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace clab::detail {

/// Splits [0, items) into contiguous chunks, one per worker: work(worker, lo, hi).
template <typename Work>
void run_partitioned(std::size_t items, unsigned threads, Work&& work) {
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(items, 1)));
    if (threads <= 1) {
        work(0U, std::size_t{0}, items);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = items * t / threads;
        const std::size_t hi = items * (t + 1) / threads;
        pool.emplace_back([&work, t, lo, hi] { work(t, lo, hi); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace clab::detail
