#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace spinlab {

/// Runs fn(i) for i in [0, count) on `jobs` worker threads. Work items must
/// not share mutable state except through their own synchronization.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    };
    std::vector<std::thread> pool;
    const int workers = std::min<std::size_t>(jobs, count);
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace spinlab
