// Static-chunked parallel loop. Results must go to preallocated per-index
// slots so runs are byte-identical regardless of the worker count.
#ifndef RVP_THREADS_HPP
#define RVP_THREADS_HPP

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace rvp {

inline int default_thread_count() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("RVP_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

inline int& thread_cap() {
    static int cap = 0; // 0: use default_thread_count()
    return cap;
}

template <class Fn>
void parallel_for(size_t n, Fn&& fn, int threads = 0) {
    if (threads <= 0) threads = thread_cap() > 0 ? thread_cap() : default_thread_count();
    threads = static_cast<int>(std::min<size_t>(static_cast<size_t>(threads), n));
    if (threads <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex err_mx;
    const size_t chunk = (n + static_cast<size_t>(threads) - 1) / static_cast<size_t>(threads);
    for (int t = 0; t < threads; ++t) {
        const size_t lo = static_cast<size_t>(t) * chunk;
        const size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mx);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace rvp

#endif
