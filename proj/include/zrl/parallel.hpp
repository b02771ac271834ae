// parallel.hpp
// Minimal fork-join helper. Work is split into contiguous index ranges and
// every result lands in a caller-owned slot, so reductions done afterwards
// in index order are independent of the thread count.

#pragma once

#include <cstddef>
#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zrl {

// Honors ZRL_THREADS when set to a positive integer; otherwise the
// hardware concurrency (at least 1).
unsigned thread_count();

// Calls body(i) for every i in [0, n).
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    const std::size_t threads = std::min<std::size_t>(thread_count(), n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex guard;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
        const std::size_t lo = n * w / threads;
        const std::size_t hi = n * (w + 1) / threads;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(guard);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace zrl
