#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace basslab {

/// Worker count: `requested` if non-zero, else hardware concurrency, capped by
/// the BASSLAB_THREADS environment variable when set.
std::size_t worker_count(std::size_t requested = 0);

/// Splits [0, n) into contiguous chunks and runs body(worker, begin, end) on
/// each. Chunk boundaries depend only on (n, workers). The first exception
/// thrown by a worker is rethrown.
template <class Body>
void parallel_chunks(std::size_t n, std::size_t workers, Body&& body)
{
    workers = std::max<std::size_t>(1, std::min(workers, n));
    if (workers == 1) {
        body(std::size_t{0}, std::size_t{0}, n);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = n * w / workers;
        const std::size_t end = n * (w + 1) / workers;
        pool.emplace_back([&, w, begin, end] {
            try {
                body(w, begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace basslab
