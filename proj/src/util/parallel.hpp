#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace daogov {

// Runs fn(begin, end) over [0, n) split into contiguous chunks, one per
// worker. Callers own determinism: each chunk must write to disjoint state
// (e.g. per-chunk buffers merged in chunk order afterwards).
template <typename Fn>
void parallel_chunks(std::size_t n, unsigned workers, Fn&& fn) {
    if (n == 0) return;
    unsigned k = std::max(1u, workers);
    k = static_cast<unsigned>(std::min<std::size_t>(k, n));
    if (k == 1) {
        fn(std::size_t{0}, n, 0u);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(k);
    std::size_t chunk = (n + k - 1) / k;
    for (unsigned t = 0; t < k; ++t) {
        std::size_t begin = t * chunk;
        std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&fn, begin, end, t] { fn(begin, end, t); });
    }
    for (auto& th : threads) th.join();
}

}  // namespace daogov
