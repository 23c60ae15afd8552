#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace halfline {

/// Process-wide worker count for parallel_for. 0 means "pick automatically".
void set_thread_count(unsigned n);
unsigned thread_count();

/// Static block partition of [0, n) over the configured workers. Each index
/// is handled by exactly one thread and results must be written to
/// preallocated slots, so output is identical for any worker count. The
/// first exception raised in a worker is rethrown on the calling thread.
template <typename F>
void parallel_for(std::size_t n, F&& body) {
    unsigned workers = thread_count();
    if (workers <= 1 || n < 2 * workers) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr error;
    std::mutex errorMutex;
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned t = 0; t < workers; ++t) {
        std::size_t lo = static_cast<std::size_t>(t) * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body, &error, &errorMutex] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(errorMutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace halfline
