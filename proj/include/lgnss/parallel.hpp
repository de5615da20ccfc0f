#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace lgnss {

// Static-chunk parallel loop over [0, n). Chunk boundaries depend only on
// (n, threads), so writers into preallocated slots stay deterministic.
inline void parallel_for(size_t n, int threads, const std::function<void(size_t, size_t)>& body) {
    if (n == 0) return;
    const int usable = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (usable == 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(usable));
    const size_t chunk = (n + usable - 1) / usable;
    for (int t = 0; t < usable; ++t) {
        const size_t begin = static_cast<size_t>(t) * chunk;
        const size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace lgnss
