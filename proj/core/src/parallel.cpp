#include "ldl/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace ldl {

namespace {
std::atomic<unsigned> g_threads{0};

unsigned env_threads() {
    if (const char* s = std::getenv("LDL_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end != s && v > 0) return (unsigned)v;
    }
    return 1;
}
} // namespace

unsigned thread_count() {
    unsigned n = g_threads.load();
    if (n == 0) {
        n = env_threads();
        g_threads.store(n);
    }
    return n;
}

void set_thread_count(unsigned n) { g_threads.store(n == 0 ? 1 : n); }

void run_indexed(std::size_t n, const std::function<void(std::size_t)>& job) {
    unsigned nt = thread_count();
    if (nt <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                job(i);
            } catch (...) {
                std::lock_guard lk(err_mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned k = (unsigned)std::min<std::size_t>(nt, n);
    for (unsigned t = 0; t < k; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

} // namespace ldl
