#include "unitransform/common.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace ut {

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f) {
    if (n == 0) return;
    unsigned nt = threads > 0 ? unsigned(threads) : std::thread::hardware_concurrency();
    nt = std::min<unsigned>(std::max(1u, nt), unsigned(n));
    if (nt == 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                f(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace ut
