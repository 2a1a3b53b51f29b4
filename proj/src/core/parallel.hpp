#ifndef LGPOLY_PARALLEL_HPP
#define LGPOLY_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace lgp {

// Global worker count (CLI --threads forwards here). 0 means auto.
void set_threads(int k);
int threads();

// Runs f(chunk) for chunk = 0..n_chunks-1 on the configured worker count.
// Work is handed out dynamically but each chunk's result must be written to a
// chunk-indexed slot by the caller, so reductions stay order-independent.
template <typename F>
void parallel_chunks(std::int64_t n_chunks, F&& f) {
    int nt = threads();
    if (nt <= 1 || n_chunks <= 1) {
        for (std::int64_t c = 0; c < n_chunks; ++c) f(c);
        return;
    }
    std::atomic<std::int64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::int64_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            f(c);
        }
    };
    std::vector<std::thread> pool;
    int spawn = static_cast<int>(std::min<std::int64_t>(nt, n_chunks));
    pool.reserve(spawn - 1);
    for (int t = 0; t + 1 < spawn; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

} // namespace lgp

#endif
