#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace ldl {

// Worker count used by the library.  Defaults to LDL_THREADS, else 1.
unsigned thread_count();
void set_thread_count(unsigned n);

// Runs job(i) for i in [0, n).  Each job writes only its own slot; the caller
// combines slots in index order, so results do not depend on the schedule.
void run_indexed(std::size_t n, const std::function<void(std::size_t)>& job);

template <class T, class Fn>
std::vector<T> map_indexed(std::size_t n, Fn&& fn) {
    std::vector<T> out(n);
    run_indexed(n, [&](std::size_t i) { out[i] = fn(i); });
    return out;
}

} // namespace ldl
