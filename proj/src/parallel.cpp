#include "halfline/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>

namespace halfline {

namespace {
std::atomic<unsigned> g_threads{0};

unsigned default_threads() {
    if (const char* env = std::getenv("HALFLINE_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(std::min(v, 64L));
    }
    unsigned hw = std::thread::hardware_concurrency();
    return std::clamp(hw, 1u, 8u);
}
}  // namespace

void set_thread_count(unsigned n) { g_threads.store(n); }

unsigned thread_count() {
    unsigned n = g_threads.load();
    return n == 0 ? default_threads() : n;
}

}  // namespace halfline
