#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace globalprop {

// Worker-pool width: GLOBALPROP_THREADS if set, else hardware concurrency.
inline int worker_count() {
    if (const char* env = std::getenv("GLOBALPROP_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Static partition of [0, n) over the worker pool. Bodies must write to
// disjoint state; results are deterministic regardless of pool width.
inline void parallel_for(int n, const std::function<void(int)>& body) {
    int workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (int k = 0; k < n; ++k) body(k);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([=, &body] {
            for (int k = w; k < n; k += workers) body(k);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace globalprop
