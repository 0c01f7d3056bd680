// parallel.hpp — deterministic block-parallel helpers.  Work is split into
// fixed blocks keyed by (seed, block index), so results are invariant to the
// worker count; QRANGING_THREADS overrides the default worker count.

#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace qranging::parallel {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) {
    return splitmix64(splitmix64(seed) ^ splitmix64(block + 0x51ed2701ULL));
}

inline int worker_count() {
    if (const char* env = std::getenv("QRANGING_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(index) for index in [0, count) across workers.  fn must only touch
// per-index state (results slotted by index stay deterministic).
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const int workers = std::min<std::size_t>(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace qranging::parallel
