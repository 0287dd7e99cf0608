#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace graphoid {

// Worker cap for internally parallel operations. Results never depend on it.
struct ExecPolicy {
    unsigned workers = 1;
};

// Reads GRAPHOID_WORKERS; 1 when unset or invalid.
unsigned default_workers();

// Calls body(begin, end) over contiguous chunks of [0, n) on up to `workers`
// threads. The first exception thrown by any chunk is rethrown.
template <class Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
    std::size_t threads = std::min<std::size_t>(std::max(1u, workers), n);
    if (threads <= 1) {
        if (n) body(std::size_t{0}, n);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
        std::size_t begin = t * chunk, end = std::min(n, begin + chunk);
        pool.emplace_back([&, t, begin, end] {
            try {
                if (begin < end) body(begin, end);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace graphoid
