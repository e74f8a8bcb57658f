#include "dlgeo/util.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace dlgeo {

int& worker_cap() {
    static int cap = 1;
    return cap;
}

long long parallel_max(std::size_t n, long long init,
                       const std::function<long long(std::size_t)>& eval) {
    if (n == 0) return init;
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t workers = std::min<std::size_t>(
        {n, static_cast<std::size_t>(std::max(1, worker_cap())),
         static_cast<std::size_t>(hw == 0 ? 1 : hw)});
    if (workers <= 1) {
        long long best = init;
        for (std::size_t i = 0; i < n; ++i) best = std::max(best, eval(i));
        return best;
    }
    std::vector<long long> partial(workers, init);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            long long best = init;
            for (std::size_t i = w; i < n; i += workers) best = std::max(best, eval(i));
            partial[w] = best;
        });
    }
    for (auto& t : pool) t.join();
    long long best = init;
    for (long long p : partial) best = std::max(best, p);
    return best;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t workers = std::min<std::size_t>(
        {n, static_cast<std::size_t>(std::max(1, worker_cap())),
         static_cast<std::size_t>(hw == 0 ? 1 : hw)});
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace dlgeo
