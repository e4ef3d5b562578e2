#ifndef DUALITY_GUARD_PARALLEL_HH
#define DUALITY_GUARD_PARALLEL_HH 1

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace duality
{
    /// Number of workers for sweeps; 0 means all cores.
    auto resolve_threads(unsigned requested) -> unsigned;

    /// Applies f to every index in [0, count) on up to `threads` workers.
    /// Results are stored by index, so output never depends on scheduling.
    /// The first exception (by index) is rethrown after all workers finish.
    template <typename R_, typename F_>
    auto parallel_map(std::size_t count, unsigned threads, F_ && f) -> std::vector<R_>
    {
        std::vector<R_> results(count);
        std::vector<std::exception_ptr> errors(count);
        std::atomic<std::size_t> next{0};

        auto worker = [&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    results[i] = f(i);
                }
                catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };

        unsigned n = std::max(1u, std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(std::max<std::size_t>(count, 1))));
        if (n == 1)
            worker();
        else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < n; ++t)
                pool.emplace_back(worker);
            for (auto & t : pool)
                t.join();
        }

        for (auto & e : errors)
            if (e)
                std::rethrow_exception(e);
        return results;
    }
}

#endif
