// parallel.hpp — Worker pool over independent grid points. Workers pull
// indices from an atomic counter and write into caller-owned slots, so
// results are independent of worker count and scheduling order.

#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace usc {

inline void parallel_for(int n, int threads,
                         const std::function<void(int)>& body) {
    if (n <= 0) return;
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 1 || n == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    threads = std::min(threads, n);

    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace usc
