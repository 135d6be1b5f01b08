#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <future>
#include <type_traits>
#include <utility>

namespace acqgraph {

// Process-wide worker count. 0 resets to hardware concurrency.
unsigned worker_threads();
void set_worker_threads(unsigned n);

// Runs work(lo, hi) over [0, n) in fixed-size blocks, possibly concurrently,
// and feeds each block's result to merge() in block order. Block boundaries
// and merge order do not depend on the worker count, so any reduction that is
// deterministic per block stays bitwise reproducible under --threads.
template <typename Work, typename Merge>
void for_blocks_ordered(std::size_t n, std::size_t block_size, Work&& work,
                        Merge&& merge) {
    if (n == 0) return;
    if (block_size == 0) block_size = 1;
    const std::size_t n_blocks = (n + block_size - 1) / block_size;
    const unsigned threads = worker_threads();

    if (threads <= 1 || n_blocks <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) {
            const std::size_t lo = b * block_size;
            const std::size_t hi = std::min(n, lo + block_size);
            merge(work(lo, hi));
        }
        return;
    }

    using Partial = std::invoke_result_t<Work&, std::size_t, std::size_t>;
    std::deque<std::future<Partial>> inflight;
    std::size_t next_block = 0;
    auto launch = [&] {
        const std::size_t b = next_block++;
        const std::size_t lo = b * block_size;
        const std::size_t hi = std::min(n, lo + block_size);
        inflight.push_back(std::async(std::launch::async,
                                      [lo, hi, &work] { return work(lo, hi); }));
    };
    while (next_block < n_blocks && inflight.size() < threads) launch();
    while (!inflight.empty()) {
        Partial p = inflight.front().get();
        inflight.pop_front();
        if (next_block < n_blocks) launch();
        merge(std::move(p));
    }
}

}  // namespace acqgraph
