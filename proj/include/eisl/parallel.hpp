#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace eisl {

/// Number of workers to use when the caller passes 0.
inline unsigned default_workers() noexcept {
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(worker, index) for index in [0, count), index i going to worker i % workers.
/// The static assignment keeps per-worker partial results reproducible.
template <class Body>
void parallel_for_strided(std::size_t count, unsigned workers, Body&& body) {
    if (workers == 0) workers = default_workers();
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(0u, i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) body(w, i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

/// Evaluates fn(i) for every i into a vector; the result order never depends on scheduling.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, unsigned workers, Fn&& fn) {
    std::vector<T> out(count);
    parallel_for_strided(count, workers, [&](unsigned, std::size_t i) { out[i] = fn(i); });
    return out;
}

}  // namespace eisl
