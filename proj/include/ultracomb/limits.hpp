#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ultracomb/intset.hpp"

namespace ultracomb {

/// Finite run of a real sequence; values[i] holds a_{i+1} (math indexing is
/// 1-based throughout this module). Inputs must be finite reals.
struct PrefixSequence {
    std::vector<double> values;

    explicit PrefixSequence(std::vector<double> v);
    int length() const { return static_cast<int>(values.size()); }
    double at1(int n) const { return values[static_cast<size_t>(n) - 1]; }  // 1-based
};

struct DoubleSequence {
    std::function<double(long long, long long)> eval;  // (n, m), both >= 1
};

struct DensityReport {
    double lower = 0.0;
    double upper = 0.0;
    std::string method;
    std::vector<std::pair<int, double>> trace_lower;
    std::vector<std::pair<int, double>> trace_upper;
    double slack = 0.0;       // truncation slack bound
    double agreement = 0.0;   // |final trace value - reported extremum|
};

enum class Extremum { minimum, maximum };

/// Running min/max at the final index of the prefix.
double running_extrema_limit(const PrefixSequence& seq, Extremum mode);

struct TailEstimates {
    double liminf = 0.0;
    double limsup = 0.0;
    std::vector<std::pair<int, double>> trace_inf;  // (n, min over [n, N])
    std::vector<std::pair<int, double>> trace_sup;
};

/// Windowed extrema min/max over [n, N] with the estimates taken at the last
/// traced n (half the prefix, so tails keep at least N/2 terms).
TailEstimates liminf_limsup_nested(const PrefixSequence& seq);

/// Element 0 of the set is ignored; counting starts at 1.
DensityReport schnirelmann(const IntSet& a);

DensityReport asymptotic_density_bounds(const IntSet& a);

struct BanachOptions {
    int max_window = 0;  // 0: derived from the bound
    int threads = 1;
};

int default_banach_window(int bound);

/// Sliding-window extrema over windows fully inside [1, bound); reports
/// sup_n min-window/n as lower and inf_n max-window/n as upper, with the
/// window-truncation slack 2*max_window/bound.
DensityReport banach_density(const IntSet& a, const BanachOptions& opt = {});

/// Evaluates the nested min/max window grid as an iterated double limit.
/// Agrees with banach_density on matching grids.
DensityReport banach_nested_tensor_formula(const IntSet& a, const BanachOptions& opt = {});

struct LimitCaps {
    int n_cap = 64;
    long long m_cap = 1 << 16;
};

enum class LimitStatus { ok, no_inner_limit, cap_too_small };

struct LimitResult {
    LimitStatus status = LimitStatus::ok;
    double value = 0.0;
    int bad_n = 0;  // first n whose inner tail failed, when no_inner_limit
    std::vector<std::pair<long long, double>> inner_trace;  // for the last n
    std::vector<std::pair<int, double>> outer_trace;
};

/// Inner limits per n are detected by a Cauchy-tail criterion at tol/2 over
/// the last grid points of a geometric m-grid; the outer limit is detected
/// the same way over the last quarter of the n-range. Estimates refine the
/// final value by one step of Aitken extrapolation when the tail contracts.
LimitResult iterated_double_limit(const DoubleSequence& ds, double tol, const LimitCaps& caps);

/// Riemann-sum double sequence (1/m) * sum_{k=-nm..nm} f(k/m), fed through
/// iterated_double_limit; estimates the integral of f over the whole line.
LimitResult riemann_double(const std::function<double(double)>& f, double tol,
                           const LimitCaps& caps);

struct LimitPointReport {
    bool reached = false;
    std::vector<int> indices;  // 1-based hits
};

/// True iff at least `count` indices satisfy |a_n - target| < eps.
LimitPointReport limit_point_check(const PrefixSequence& seq, double target, double eps,
                                   int count);

}  // namespace ultracomb
