#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qprim {

/// Worker count: QPRIM_THREADS when set to a positive integer, otherwise the
/// available hardware parallelism.
inline unsigned default_workers()
{
    if (const char* env = std::getenv("QPRIM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0)
            return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(i) for i in [0, count) on up to `workers` threads, handing out
/// indices dynamically. The first exception thrown by any task is rethrown.
template <class Fn>
void parallel_for(std::uint64_t count, unsigned workers, Fn&& fn)
{
    workers = std::max(1u, workers);
    if (workers == 1 || count <= 1) {
        for (std::uint64_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto body = [&] {
        try {
            for (std::uint64_t i = next++; i < count; i = next++)
                fn(i);
        } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure)
                failure = std::current_exception();
            next = count;
        }
    };
    std::vector<std::thread> pool;
    const unsigned n = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t)
        pool.emplace_back(body);
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace qprim
