#ifndef BICOST_PARALLEL_HPP
#define BICOST_PARALLEL_HPP

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "bicost/errors.hpp"

namespace bicost {

/// Worker count for data-parallel sweeps: hardware concurrency, capped by
/// the BICOST_THREADS environment variable when set.
inline int thread_budget() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    const char* env = std::getenv("BICOST_THREADS");
    if (!env) return hw;
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || cap < 1)
        throw config_error(
            "BICOST_THREADS must be a positive integer, got '" +
            std::string(env) + "'");
    return cap < hw ? static_cast<int>(cap) : hw;
}

/// Run fn(i) for i in [0, n) on up to thread_budget() threads.  Results
/// must be written by index so output order never depends on scheduling.
/// The first exception thrown by any worker is rethrown on the caller.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    const int workers = std::min(thread_budget(), n);
    if (workers == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (int i = w; i < n; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace bicost

#endif
