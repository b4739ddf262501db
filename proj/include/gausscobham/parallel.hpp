#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace gausscobham {

/// Worker cap from GAUSSCOBHAM_THREADS, defaulting to the hardware count.
inline unsigned thread_cap() {
    if (const char* env = std::getenv("GAUSSCOBHAM_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Runs f(i) for 0 <= i < n over contiguous chunks; f must write to disjoint
/// locations, which keeps results independent of the schedule.
template <class F>
void parallel_for(long n, F&& f) {
    long t = std::min<long>(thread_cap(), std::max<long>(n, 1));
    if (t <= 1) {
        for (long i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    long chunk = (n + t - 1) / t;
    for (long k = 0; k < t; ++k) {
        long lo = k * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &f] {
            for (long i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace gausscobham
