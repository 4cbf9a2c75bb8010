#include "ultracomb/kernels.hpp"

#include <algorithm>

namespace ultracomb::kernels {

WindowProfile window_profile(const IntSet& a, int max_length, int threads) {
    int bound = a.bound();
    max_length = std::min(max_length, bound - 2);
    WindowProfile p;
    p.max_length = std::max(max_length, 0);
    p.min_count.assign(static_cast<size_t>(p.max_length) + 1, 0);
    p.max_count.assign(static_cast<size_t>(p.max_length) + 1, 0);
    if (p.max_length < 1) return p;

    auto prefix = a.prefix_counts();  // prefix[t] = |A ∩ [0, t-1]|

#ifdef _OPENMP
#pragma omp parallel for num_threads(std::max(threads, 1)) schedule(static)
#endif
    for (int n = 1; n <= p.max_length; ++n) {
        int mn = n + 1, mx = -1;
        // windows [x+1, x+n] inside [1, bound)
        for (int x = 0; x + n <= bound - 1; ++x) {
            int c = prefix[static_cast<size_t>(x + n) + 1] - prefix[static_cast<size_t>(x) + 1];
            mn = std::min(mn, c);
            mx = std::max(mx, c);
        }
        p.min_count[static_cast<size_t>(n)] = (mx < 0) ? 0 : mn;
        p.max_count[static_cast<size_t>(n)] = std::max(mx, 0);
    }
    (void)threads;
    return p;
}

WindowProfile window_profile_reference(const IntSet& a, int max_length) {
    int bound = a.bound();
    max_length = std::min(max_length, bound - 2);
    WindowProfile p;
    p.max_length = std::max(max_length, 0);
    p.min_count.assign(static_cast<size_t>(p.max_length) + 1, 0);
    p.max_count.assign(static_cast<size_t>(p.max_length) + 1, 0);
    for (int n = 1; n <= p.max_length; ++n) {
        int mn = n + 1, mx = -1;
        for (int x = 0; x + n <= bound - 1; ++x) {
            int c = 0;
            for (int v = x + 1; v <= x + n; ++v)
                if (a.contains(v)) ++c;
            mn = std::min(mn, c);
            mx = std::max(mx, c);
        }
        p.min_count[static_cast<size_t>(n)] = (mx < 0) ? 0 : mn;
        p.max_count[static_cast<size_t>(n)] = std::max(mx, 0);
    }
    return p;
}

}  // namespace ultracomb::kernels
