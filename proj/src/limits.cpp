#include "ultracomb/limits.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "ultracomb/kernels.hpp"

namespace ultracomb {

PrefixSequence::PrefixSequence(std::vector<double> v) : values(std::move(v)) {
    if (values.empty()) throw std::invalid_argument("PrefixSequence: empty input");
    for (double x : values)
        if (!std::isfinite(x)) throw std::invalid_argument("PrefixSequence: values must be finite");
}

double running_extrema_limit(const PrefixSequence& seq, Extremum mode) {
    double acc = seq.values.front();
    for (double x : seq.values) acc = (mode == Extremum::minimum) ? std::min(acc, x) : std::max(acc, x);
    return acc;
}

TailEstimates liminf_limsup_nested(const PrefixSequence& seq) {
    int N = seq.length();
    // suffix extrema: inf/sup over [n, N]
    std::vector<double> suf_min(static_cast<size_t>(N) + 2), suf_max(static_cast<size_t>(N) + 2);
    suf_min[static_cast<size_t>(N)] = suf_max[static_cast<size_t>(N)] = seq.at1(N);
    for (int n = N - 1; n >= 1; --n) {
        suf_min[static_cast<size_t>(n)] = std::min(seq.at1(n), suf_min[static_cast<size_t>(n) + 1]);
        suf_max[static_cast<size_t>(n)] = std::max(seq.at1(n), suf_max[static_cast<size_t>(n) + 1]);
    }
    TailEstimates est;
    int n_last = std::max(1, N / 2);  // estimates keep a tail of at least N/2 terms
    int step = std::max(1, n_last / 64);
    for (int n = 1; n <= n_last; n += step) {
        est.trace_inf.emplace_back(n, suf_min[static_cast<size_t>(n)]);
        est.trace_sup.emplace_back(n, suf_max[static_cast<size_t>(n)]);
    }
    if (est.trace_inf.back().first != n_last) {
        est.trace_inf.emplace_back(n_last, suf_min[static_cast<size_t>(n_last)]);
        est.trace_sup.emplace_back(n_last, suf_max[static_cast<size_t>(n_last)]);
    }
    est.liminf = suf_min[static_cast<size_t>(n_last)];
    est.limsup = suf_max[static_cast<size_t>(n_last)];
    return est;
}

DensityReport schnirelmann(const IntSet& a) {
    DensityReport r;
    r.method = "schnirelmann";
    int N = a.bound();
    if (N < 2) {  // no n in [1, N): vacuous infimum
        r.lower = r.upper = 1.0;
        return r;
    }
    auto prefix = a.prefix_counts();
    double best = 1.0;
    int step = std::max(1, (N - 1) / 128);
    for (int n = 1; n < N; ++n) {
        double ratio = static_cast<double>(prefix[static_cast<size_t>(n) + 1] -
                                           prefix[1]) /  // elements in [1, n]; 0 ignored
                       static_cast<double>(n);
        best = std::min(best, ratio);
        if (n % step == 0 || n == N - 1) r.trace_lower.emplace_back(n, ratio);
    }
    r.lower = r.upper = best;
    return r;
}

DensityReport asymptotic_density_bounds(const IntSet& a) {
    DensityReport r;
    r.method = "asymptotic";
    int N = a.bound();
    if (N < 2) {
        r.lower = r.upper = 0.0;
        return r;
    }
    auto prefix = a.prefix_counts();
    std::vector<double> ratio;
    ratio.reserve(static_cast<size_t>(N) - 1);
    for (int n = 1; n < N; ++n)
        ratio.push_back(static_cast<double>(prefix[static_cast<size_t>(n) + 1] - prefix[1]) /
                        static_cast<double>(n));
    auto est = liminf_limsup_nested(PrefixSequence(std::move(ratio)));
    r.lower = est.liminf;
    r.upper = est.limsup;
    r.trace_lower = est.trace_inf;
    r.trace_upper = est.trace_sup;
    r.slack = 2.0 / static_cast<double>(N);
    return r;
}

int default_banach_window(int bound) {
    int w = bound / 128;
    w = std::clamp(w, 8, 64);
    return std::min(w, std::max(1, bound - 2));
}

DensityReport banach_density(const IntSet& a, const BanachOptions& opt) {
    DensityReport r;
    r.method = "banach";
    int N = a.bound();
    int w = opt.max_window > 0 ? std::min(opt.max_window, N - 2) : default_banach_window(N);
    if (w < 1) {
        r.lower = 0.0;
        r.upper = 1.0;
        return r;
    }
    auto profile = kernels::window_profile(a, w, opt.threads);
    double lower = 0.0, upper = 1.0;
    for (int n = 1; n <= w; ++n) {
        double lo = static_cast<double>(profile.min_count[static_cast<size_t>(n)]) / n;
        double hi = static_cast<double>(profile.max_count[static_cast<size_t>(n)]) / n;
        lower = std::max(lower, lo);
        upper = std::min(upper, hi);
        r.trace_lower.emplace_back(n, lo);
        r.trace_upper.emplace_back(n, hi);
    }
    r.lower = lower;
    r.upper = upper;
    r.slack = 2.0 * static_cast<double>(w) / static_cast<double>(N);
    r.agreement = std::max(std::fabs(r.trace_upper.back().second - upper),
                           std::fabs(r.trace_lower.back().second - lower));
    return r;
}

DensityReport banach_nested_tensor_formula(const IntSet& a, const BanachOptions& opt) {
    DensityReport r;
    r.method = "banach-nested";
    int N = a.bound();
    int w = opt.max_window > 0 ? std::min(opt.max_window, N - 2) : default_banach_window(N);
    if (w < 1) {
        r.lower = 0.0;
        r.upper = 1.0;
        return r;
    }
    auto profile = kernels::window_profile(a, w, opt.threads);
    // inner limits over the window positions stabilize once every position is
    // seen, so the iterated value per n is the running min/max over k <= n;
    // both are monotone in n and the grid estimate is the final value.
    double run_min = 1.0, run_max = 0.0;
    for (int n = 1; n <= w; ++n) {
        double hi = static_cast<double>(profile.max_count[static_cast<size_t>(n)]) / n;
        double lo = static_cast<double>(profile.min_count[static_cast<size_t>(n)]) / n;
        run_min = std::min(run_min, hi);  // min over k<=n of sup-window ratios
        run_max = std::max(run_max, lo);  // max over k<=n of inf-window ratios
        r.trace_upper.emplace_back(n, run_min);
        r.trace_lower.emplace_back(n, run_max);
    }
    r.upper = run_min;
    r.lower = run_max;
    r.slack = 2.0 * static_cast<double>(w) / static_cast<double>(N);
    return r;
}

// ---------------------------------------------------------------------------
// Iterated double limits
// ---------------------------------------------------------------------------

namespace {

// one Aitken step; falls back to the last value when the tail does not
// contract or the extrapolation leaves the observed range
double extrapolate(double x0, double x1, double x2) {
    double d1 = x1 - x0, d2 = x2 - x1;
    double denom = d2 - d1;
    if (std::fabs(d2) > std::fabs(d1)) return x2;
    if (std::fabs(denom) < 1e-300) return x2;
    double est = x2 - d2 * d2 / denom;
    double lo = std::min({x0, x1, x2}), hi = std::max({x0, x1, x2});
    double spread = (hi - lo) + 1e-12;
    if (est < lo - spread || est > hi + spread) return x2;
    return est;
}

std::vector<long long> m_grid(long long m_cap) {
    std::vector<long long> g;
    if (m_cap <= 16) {
        for (long long m = 1; m <= m_cap; ++m) g.push_back(m);
        return g;
    }
    for (long long m = m_cap; m >= 16; m /= 2) {
        g.push_back(m);
        g.push_back(m - 1);
        g.push_back(m - (m / 4));  // three-quarter point of each octave
    }
    for (long long m = 1; m <= 8; ++m) g.push_back(m);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

}  // namespace

LimitResult iterated_double_limit(const DoubleSequence& ds, double tol, const LimitCaps& caps) {
    if (tol <= 0) throw std::invalid_argument("iterated_double_limit: tol must be positive");
    if (caps.n_cap < 4 || caps.m_cap < 4)
        throw std::invalid_argument("iterated_double_limit: caps too small to certify tol");
    LimitResult out;
    auto grid = m_grid(caps.m_cap);

    std::vector<double> inner(static_cast<size_t>(caps.n_cap) + 1, 0.0);
    for (int n = 1; n <= caps.n_cap; ++n) {
        std::map<long long, double> vals;
        for (long long m : grid) vals[m] = ds.eval(n, m);
        // Cauchy tail over the last quarter of the m-range
        long long tail_lo = caps.m_cap - caps.m_cap / 4;
        double tmin = 0, tmax = 0;
        bool first = true;
        for (auto& [m, v] : vals) {
            if (m < tail_lo) continue;
            if (first) {
                tmin = tmax = v;
                first = false;
            } else {
                tmin = std::min(tmin, v);
                tmax = std::max(tmax, v);
            }
        }
        if (first || tmax - tmin > tol / 2) {
            out.status = LimitStatus::no_inner_limit;
            out.bad_n = n;
            for (auto& [m, v] : vals) out.inner_trace.emplace_back(m, v);
            return out;
        }
        // estimate from the geometric triple (m/4, m/2, m) when present
        double est = vals.rbegin()->second;
        auto it2 = vals.find(caps.m_cap / 2), it4 = vals.find(caps.m_cap / 4);
        if (it2 != vals.end() && it4 != vals.end())
            est = extrapolate(it4->second, it2->second, vals.rbegin()->second);
        inner[static_cast<size_t>(n)] = est;
        if (n == caps.n_cap)
            for (auto& [m, v] : vals) out.inner_trace.emplace_back(m, v);
    }

    int step = std::max(1, caps.n_cap / 128);
    for (int n = 1; n <= caps.n_cap; n += step)
        out.outer_trace.emplace_back(n, inner[static_cast<size_t>(n)]);

    int tail_lo = caps.n_cap - caps.n_cap / 4;
    double tmin = inner[static_cast<size_t>(tail_lo)], tmax = tmin;
    for (int n = tail_lo; n <= caps.n_cap; ++n) {
        tmin = std::min(tmin, inner[static_cast<size_t>(n)]);
        tmax = std::max(tmax, inner[static_cast<size_t>(n)]);
    }
    if (tmax - tmin > tol / 2) {
        out.status = LimitStatus::cap_too_small;
        out.bad_n = caps.n_cap;
        return out;
    }
    double est = inner[static_cast<size_t>(caps.n_cap)];
    if (caps.n_cap >= 8)
        est = extrapolate(inner[static_cast<size_t>(caps.n_cap / 4)],
                          inner[static_cast<size_t>(caps.n_cap / 2)],
                          inner[static_cast<size_t>(caps.n_cap)]);
    out.value = est;
    return out;
}

LimitResult riemann_double(const std::function<double(double)>& f, double tol,
                           const LimitCaps& caps) {
    DoubleSequence ds;
    ds.eval = [&f](long long n, long long m) {
        double sum = 0.0;
        double dm = static_cast<double>(m);
        for (long long k = -n * m; k <= n * m; ++k) sum += f(static_cast<double>(k) / dm);
        return sum / dm;
    };
    return iterated_double_limit(ds, tol, caps);
}

LimitPointReport limit_point_check(const PrefixSequence& seq, double target, double eps,
                                   int count) {
    if (count < 1) throw std::invalid_argument("limit_point_check: count must be >= 1");
    LimitPointReport r;
    for (int n = 1; n <= seq.length(); ++n)
        if (std::fabs(seq.at1(n) - target) < eps) r.indices.push_back(n);
    r.reached = static_cast<int>(r.indices.size()) >= count;
    return r;
}

}  // namespace ultracomb
