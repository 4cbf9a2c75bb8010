#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ultracomb/intset.hpp"

namespace ultracomb::kernels {

struct ScanResult {
    std::uint64_t checked = 0;
    std::optional<std::uint64_t> first_violation;

    bool pass() const { return !first_violation.has_value(); }
};

/// Serial reference: test `ok` on every mask in [0, count).
template <class F>
ScanResult scan_masks_serial(std::uint64_t count, F&& ok) {
    ScanResult r;
    for (std::uint64_t m = 0; m < count; ++m) {
        ++r.checked;
        if (!ok(m)) {
            r.first_violation = m;
            return r;
        }
    }
    return r;
}

/// Partitions the mask range across threads. Merge is deterministic: the
/// reported counterexample is the lowest violating mask, and `checked` counts
/// every mask below it (matching the serial scan).
template <class F>
ScanResult scan_masks(std::uint64_t count, F&& ok, int threads) {
#ifdef _OPENMP
    if (threads > 1 && count > 4096) {
        int t = threads;
        std::vector<ScanResult> parts(static_cast<size_t>(t));
        std::uint64_t chunk = (count + t - 1) / t;
#pragma omp parallel for num_threads(t) schedule(static, 1)
        for (int p = 0; p < t; ++p) {
            std::uint64_t lo = chunk * static_cast<std::uint64_t>(p);
            std::uint64_t hi = std::min(count, lo + chunk);
            ScanResult local;
            for (std::uint64_t m = lo; m < hi; ++m) {
                ++local.checked;
                if (!ok(m)) {
                    local.first_violation = m;
                    break;
                }
            }
            parts[static_cast<size_t>(p)] = local;
        }
        ScanResult merged;
        std::uint64_t lo_base = 0;
        for (int p = 0; p < t; ++p) {
            const auto& part = parts[static_cast<size_t>(p)];
            if (part.first_violation) {
                merged.checked = lo_base + part.checked;
                merged.first_violation = part.first_violation;
                return merged;
            }
            lo_base += part.checked;
        }
        merged.checked = lo_base;
        return merged;
    }
#endif
    (void)threads;
    return scan_masks_serial(count, ok);
}

/// Window count extrema per window length. min_count[n] / max_count[n] range
/// over windows [x+1, x+n] that lie fully inside [1, bound); index 0 unused.
struct WindowProfile {
    std::vector<int> min_count;
    std::vector<int> max_count;
    int max_length = 0;
};

/// Sliding-window production kernel, parallel over window lengths.
WindowProfile window_profile(const IntSet& a, int max_length, int threads = 1);

/// Recounts every window from scratch. Kept as the test oracle.
WindowProfile window_profile_reference(const IntSet& a, int max_length);

}  // namespace ultracomb::kernels
