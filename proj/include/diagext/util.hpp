#ifndef DIAGEXT_UTIL_HPP
#define DIAGEXT_UTIL_HPP

#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace diagext {

/* KOSZUL_EXT_THREADS caps internal parallelism; default 1. */
inline int thread_cap() {
    const char* env = std::getenv("KOSZUL_EXT_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    if (n < 1) return 1;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw > 0 && n > static_cast<int>(hw)) n = static_cast<int>(hw);
    return n;
}

/* Run fn(0..n-1) over at most thread_cap() workers; results must be
 * written to per-index slots. Exceptions are rethrown (first index). */
template <class Fn>
void parallel_for(std::size_t n, Fn fn) {
    int cap = thread_cap();
    if (cap <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errs(n);
    std::vector<std::thread> pool;
    std::size_t stride = static_cast<std::size_t>(cap);
    for (std::size_t t = 0; t < stride && t < n; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < n; i += stride) {
                try {
                    fn(i);
                } catch (...) {
                    errs[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

} // namespace diagext

#endif
