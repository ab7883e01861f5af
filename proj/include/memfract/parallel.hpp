#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace memfract {

/// Worker count: MEMFRACT_THREADS if set (clamped to [1, 64]), otherwise
/// hardware concurrency.
inline unsigned thread_budget() {
    if (const char* env = std::getenv("MEMFRACT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v > 64 ? 64 : v);
        return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Runs fn(i) for i in [0, n). Items are striped over workers and every
/// item writes only its own output slot, so results do not depend on the
/// worker count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = thread_budget();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace memfract
