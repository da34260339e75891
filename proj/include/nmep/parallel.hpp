#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace nmep {

// Worker count: NMEP_THREADS if set (>= 1), otherwise all hardware threads.
inline unsigned max_threads() {
    if (const char* env = std::getenv("NMEP_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1u;
}

// Runs body(i) for i in [0, count) on contiguous index chunks.  Each index is
// processed by exactly one thread and any per-index reduction stays inside
// body, so results are identical to the serial order.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
    const unsigned threads = std::min<std::size_t>(max_threads(), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = count * t / threads;
        const std::size_t end = count * (t + 1) / threads;
        pool.emplace_back([begin, end, &body] {
            for (std::size_t i = begin; i < end; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace nmep
