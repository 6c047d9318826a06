#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace cuspflow {

// Deterministic block-parallel map: work is split into fixed blocks, each block
// computes a value of T from its block index (typically seeding an RNG stream
// from it), and results are combined in block order. The outcome is therefore
// independent of the worker count and of scheduling.
template <typename T, typename Fn, typename Combine>
T parallel_blocks(std::size_t n_blocks, int n_workers, Fn&& block_fn, T init, Combine&& combine) {
    std::vector<T> results(n_blocks);
    if (n_workers <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) results[b] = block_fn(b);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t b = next.fetch_add(1);
                if (b >= n_blocks) break;
                results[b] = block_fn(b);
            }
        };
        std::vector<std::thread> pool;
        int n = std::min<int>(n_workers, int(n_blocks));
        pool.reserve(n);
        for (int i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    T acc = init;
    for (std::size_t b = 0; b < n_blocks; ++b) acc = combine(acc, results[b]);
    return acc;
}

inline int default_workers() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : int(hc > 8 ? 8 : hc);
}

} // namespace cuspflow
