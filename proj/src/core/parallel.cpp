#include "parallel.hpp"

namespace lgp {

namespace {
std::atomic<int> g_threads{0};
}

void set_threads(int k) { g_threads.store(k < 0 ? 0 : k); }

int threads() {
    int k = g_threads.load();
    if (k > 0) return k;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace lgp
