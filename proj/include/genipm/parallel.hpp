#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace genipm {

/// Runs f(rep) for rep in [0, reps) on up to `workers` threads. Results land
/// in a vector indexed by rep, so reductions over the returned vector do not
/// depend on the worker count or on scheduling order.
template <typename F>
auto run_replications(std::size_t reps, unsigned workers, F&& f)
    -> std::vector<decltype(f(std::size_t{0}))> {
    using R = decltype(f(std::size_t{0}));
    std::vector<R> out(reps);
    if (workers <= 1 || reps <= 1) {
        for (std::size_t r = 0; r < reps; ++r) out[r] = f(r);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    const std::size_t count = std::min<std::size_t>(workers, reps);
    pool.reserve(count);
    for (std::size_t w = 0; w < count; ++w) {
        pool.emplace_back([&] {
            while (!failed.load(std::memory_order_relaxed)) {
                const std::size_t r = next.fetch_add(1, std::memory_order_relaxed);
                if (r >= reps) return;
                try {
                    out[r] = f(r);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

/// Worker count actually used for replications of a given memory weight:
/// hardware concurrency, capped so concurrent cost matrices stay within a
/// few GB.
unsigned default_workers(std::size_t bytes_per_task);

}  // namespace genipm
