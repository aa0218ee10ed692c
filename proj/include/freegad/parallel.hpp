#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace freegad {

// Run body(begin, end) over contiguous chunks of [0, count). Every index is
// handled by exactly one worker and each worker accumulates sequentially, so
// results are identical for every thread count. Bodies must not throw.
template <typename Body>
void parallel_chunks(std::size_t count, int threads, Body&& body) {
    if (count == 0) return;
    std::size_t workers = threads < 1 ? 1 : static_cast<std::size_t>(threads);
    workers = std::min(workers, count);
    if (workers == 1) {
        body(std::size_t{0}, count);
        return;
    }
    const std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (auto& t : pool) t.join();
}

} // namespace freegad
