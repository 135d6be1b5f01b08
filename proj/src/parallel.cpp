#include "acqgraph/parallel.hpp"

#include <atomic>
#include <thread>

namespace acqgraph {

namespace {

unsigned default_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

std::atomic<unsigned> g_threads{0};

}  // namespace

unsigned worker_threads() {
    const unsigned n = g_threads.load(std::memory_order_relaxed);
    return n ? n : default_threads();
}

void set_worker_threads(unsigned n) {
    g_threads.store(n, std::memory_order_relaxed);
}

}  // namespace acqgraph
