#include "platoon/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace platoon {

int thread_budget() {
    if (const char* s = std::getenv("PLATOON_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(s, &end, 10);
        if (end != s && *end == '\0' && v >= 1 && v <= 256) return static_cast<int>(v);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(std::min(hc, 16u));
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    const int t = std::max(1, std::min(thread_budget(), n));
    if (t == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto work = [&] {
        for (;;) {
            const int i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> workers;
    workers.reserve(t - 1);
    for (int k = 1; k < t; ++k) workers.emplace_back(work);
    work();
    for (auto& w : workers) w.join();
    if (err) std::rethrow_exception(err);
}

} // namespace platoon
