// Timing comparison between the serial reference paths and the OpenMP
// kernels. Not a correctness test; the equivalence checks live in
// tests/test_kernels.cpp.

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ultracomb/kernels.hpp"
#include "ultracomb/ultrafilter.hpp"

using namespace ultracomb;
using Clock = std::chrono::steady_clock;

namespace {

double secs(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace

int main() {
    int threads = max_threads();
    std::printf("kernel benchmark (max threads: %d)\n\n", threads);

    {
        std::uint64_t count = 1ull << 24;
        auto pred = [](std::uint64_t m) {
            std::uint64_t x = m * 0x9e3779b97f4a7c15ull;
            x ^= x >> 29;
            x *= 0xbf58476d1ce4e5b9ull;
            x ^= x >> 32;
            return x != 0xdeadbeefcafebabeull;  // full scan: no violation occurs
        };
        auto t0 = Clock::now();
        auto serial = kernels::scan_masks_serial(count, pred);
        double ts = secs(t0);
        t0 = Clock::now();
        auto par = kernels::scan_masks(count, pred, threads);
        double tp = secs(t0);
        std::printf("subset scan, 2^24 masks\n");
        std::printf("  serial   %8.3f s (checked %llu)\n", ts,
                    static_cast<unsigned long long>(serial.checked));
        std::printf("  omp x%-2d  %8.3f s (checked %llu)  speedup %.2f\n\n", threads, tp,
                    static_cast<unsigned long long>(par.checked), ts / tp);
    }

    {
        int bound = 1 << 15;
        IntSet a(bound);
        std::mt19937_64 rng(9);
        for (int v = 0; v < bound; ++v)
            if (rng() % 100 < 37) a.add(v);
        int w = 256;
        auto t0 = Clock::now();
        auto ref = kernels::window_profile_reference(a, w);
        double tr = secs(t0);
        t0 = Clock::now();
        auto one = kernels::window_profile(a, w, 1);
        double t1 = secs(t0);
        t0 = Clock::now();
        auto par = kernels::window_profile(a, w, threads);
        double tp = secs(t0);
        bool same = ref.min_count == one.min_count && one.min_count == par.min_count &&
                    ref.max_count == one.max_count && one.max_count == par.max_count;
        std::printf("window profile, bound 2^15, lengths 1..%d\n", w);
        std::printf("  recount reference %8.3f s\n", tr);
        std::printf("  sliding serial    %8.3f s  speedup %.1f over reference\n", t1, tr / t1);
        std::printf("  sliding omp x%-2d   %8.3f s  speedup %.2f over serial (%s)\n\n", threads, tp,
                    t1 / tp, same ? "profiles agree" : "MISMATCH");
    }

    {
        ModelCheckConfig cfg;
        cfg.i_size = 3;
        cfg.j_size = 3;
        cfg.k_size = 2;
        cfg.threads = 1;
        auto t0 = Clock::now();
        auto serial = check_model(cfg);
        double ts = secs(t0);
        cfg.threads = threads;
        t0 = Clock::now();
        auto par = check_model(cfg);
        double tp = secs(t0);
        std::printf("model check on (3,3,2)\n");
        std::printf("  serial   %8.3f s (%llu checks, %s)\n", ts,
                    static_cast<unsigned long long>(serial.total_checked()),
                    serial.pass() ? "pass" : "fail");
        std::printf("  omp x%-2d  %8.3f s  speedup %.2f\n", threads, tp, ts / tp);
    }
    return 0;
}
