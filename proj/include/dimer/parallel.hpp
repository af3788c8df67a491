#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace dimer {

// DIMER_THREADS caps worker count; 0 or unset means hardware_concurrency
inline int thread_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* s = std::getenv("DIMER_THREADS")) {
        int v = std::atoi(s);
        if (v > 0) return v;
    }
    return hw;
}

// runs body(k) for k in [0, count); results must be written by index.
// first exception is rethrown on the calling thread
inline void parallel_for(int count, const std::function<void(int)>& body) {
    int nt = std::min(thread_count(), count);
    if (nt <= 1) {
        for (int k = 0; k < count; ++k) body(k);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (int k; (k = next.fetch_add(1)) < count;) {
                try {
                    body(k);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace dimer
