#include "radiant/parallel.hpp"

#include <atomic>

namespace radiant {

namespace {
unsigned g_threads = 0;
}

void set_thread_count(unsigned n) { g_threads = n; }

unsigned thread_count() {
    if (g_threads > 0) return g_threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn) {
    const unsigned workers = thread_count();
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                fn(i);
            }
        });
    }
    for (auto &t : pool) t.join();
}

double pairwise_sum(const std::vector<double> &v) {
    struct Impl {
        static double sum(const double *p, std::size_t n) {
            if (n <= 8) {
                double s = 0.0;
                for (std::size_t i = 0; i < n; ++i) s += p[i];
                return s;
            }
            const std::size_t h = n / 2;
            return sum(p, h) + sum(p + h, n - h);
        }
    };
    return Impl::sum(v.data(), v.size());
}

} // namespace radiant
