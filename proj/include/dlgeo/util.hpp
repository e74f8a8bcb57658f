#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace dlgeo {

/// Floor division toward minus infinity. Denominator must be positive.
constexpr long long floor_div(long long a, long long b) {
    long long q = a / b;
    long long r = a % b;
    return (r != 0 && r < 0) ? q - 1 : q;
}

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

/// Worker cap for internally parallel reductions. 1 disables threading.
/// Set once by the CLI before running an experiment.
int& worker_cap();

/// Max of eval(0..n-1); runs on up to worker_cap() threads. The reduction is
/// a plain max, so the result does not depend on the schedule.
long long parallel_max(std::size_t n, long long init,
                       const std::function<long long(std::size_t)>& eval);

/// Runs fn(0..n-1) on up to worker_cap() threads. fn must write only to
/// per-index state so the outcome is schedule-independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace dlgeo
