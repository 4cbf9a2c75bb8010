#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ultracomb/limits.hpp"

using namespace ultracomb;

namespace {

IntSet residues(int bound, int p, std::initializer_list<int> rs) {
    IntSet s(bound);
    for (int v = 0; v < bound; ++v)
        for (int r : rs)
            if (v % p == r) s.add(v);
    return s;
}

IntSet random_set(int bound, double density, std::mt19937_64& rng) {
    IntSet s(bound);
    for (int v = 0; v < bound; ++v)
        if (static_cast<double>(rng() % 1000) / 1000.0 < density) s.add(v);
    return s;
}

// adaptive Simpson quadrature, the reference for the Riemann-sum scheme
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fb,
               double fm, double eps, int depth) {
    double m = (a + b) / 2;
    double lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = f(lm), frm = f(rm);
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15 * eps)
        return left + right + (left + right - whole) / 15;
    return simpson(f, a, m, fa, fm, flm, eps / 2, depth - 1) +
           simpson(f, m, b, fm, fb, frm, eps / 2, depth - 1);
}

double quadrature(const std::function<double(double)>& f, double a, double b, double eps = 1e-10) {
    double m = (a + b) / 2;
    return simpson(f, a, b, f(a), f(b), f(m), eps, 40);
}

}  // namespace

TEST_CASE("running extrema") {
    CHECK(running_extrema_limit(PrefixSequence({3, 1, 2}), Extremum::minimum) == 1);
    CHECK(running_extrema_limit(PrefixSequence({3, 1, 2}), Extremum::maximum) == 3);
    PrefixSequence c(std::vector<double>(10, 4.25));
    CHECK(running_extrema_limit(c, Extremum::minimum) == 4.25);
    CHECK(running_extrema_limit(c, Extremum::maximum) == 4.25);
    std::vector<double> inv;
    for (int n = 1; n <= 1000; ++n) inv.push_back(1.0 / n);
    CHECK(running_extrema_limit(PrefixSequence(inv), Extremum::minimum) == doctest::Approx(0.001));
    CHECK_THROWS_AS(PrefixSequence({}), std::invalid_argument);
}

TEST_CASE("tail extrema estimate liminf and limsup") {
    std::vector<double> alt;
    for (int n = 1; n <= 200; ++n) alt.push_back(n % 2 == 0 ? 1.0 : -1.0);
    auto est = liminf_limsup_nested(PrefixSequence(alt));
    CHECK(est.liminf == doctest::Approx(-1.0));
    CHECK(est.limsup == doctest::Approx(1.0));

    auto flat = liminf_limsup_nested(PrefixSequence(std::vector<double>(50, 2.0)));
    CHECK(flat.liminf == doctest::Approx(2.0));
    CHECK(flat.limsup == doctest::Approx(2.0));

    std::vector<double> damped;
    for (int n = 1; n <= 10000; ++n)
        damped.push_back((n % 2 == 0 ? 1.0 : -1.0) * (1.0 + 1.0 / n));
    auto d = liminf_limsup_nested(PrefixSequence(damped));
    CHECK(std::fabs(d.limsup - 1.0) < 1e-3);
    CHECK(std::fabs(d.liminf + 1.0) < 1e-3);
}

TEST_CASE("schnirelmann density") {
    IntSet no_one(64);
    no_one.add(2);
    no_one.add(3);
    CHECK(schnirelmann(no_one).lower == doctest::Approx(0.0));

    CHECK(schnirelmann(IntSet::full(256)).lower == doctest::Approx(1.0));

    auto odds = residues(1000, 2, {1});
    CHECK(schnirelmann(odds).lower == doctest::Approx(0.5));
}

TEST_CASE("asymptotic density bounds") {
    auto evens = residues(2048, 2, {0});
    auto r = asymptotic_density_bounds(evens);
    CHECK(std::fabs(r.lower - 0.5) <= 2.0 / 2048);
    CHECK(std::fabs(r.upper - 0.5) <= 2.0 / 2048);

    auto empty = asymptotic_density_bounds(IntSet(128));
    CHECK(empty.lower == doctest::Approx(0.0));
    CHECK(empty.upper == doctest::Approx(0.0));

    // dyadic blocks: compare against a direct recount of the tail ratios
    int N = 4096;
    IntSet blocks(N);
    for (int v = 1; v < N; ++v)
        if (static_cast<int>(std::floor(std::log2(static_cast<double>(v)))) % 2 == 0) blocks.add(v);
    auto rb = asymptotic_density_bounds(blocks);
    CHECK(rb.lower < rb.upper);  // genuinely distinct estimates
    double direct_min = 2.0, direct_max = -1.0;
    for (int n = std::max(1, (N - 1) / 2); n <= N - 1; ++n) {
        int c = 0;
        for (int v = 1; v <= n; ++v)
            if (blocks.contains(v)) ++c;
        double ratio = static_cast<double>(c) / n;
        direct_min = std::min(direct_min, ratio);
        direct_max = std::max(direct_max, ratio);
    }
    CHECK(rb.lower == doctest::Approx(direct_min));
    CHECK(rb.upper == doctest::Approx(direct_max));
}

TEST_CASE("banach density via sliding windows") {
    auto full = banach_density(IntSet::full(1024));
    CHECK(full.lower == doctest::Approx(1.0));
    CHECK(full.upper == doctest::Approx(1.0));

    auto mod4 = banach_density(residues(2048, 4, {0, 1}));
    CHECK(mod4.upper == doctest::Approx(0.5));
    CHECK(mod4.lower == doctest::Approx(0.5));

    IntSet interval(4096);
    for (int v = 600; v < 632; ++v) interval.add(v);
    auto r = banach_density(interval);
    CHECK(r.upper == doctest::Approx(1.0));  // a full window fits inside the block
    CHECK(r.lower == doctest::Approx(0.0));
}

TEST_CASE("nested window formula agrees with the sliding-window estimates") {
    auto full = banach_nested_tensor_formula(IntSet::full(512));
    CHECK(full.upper == doctest::Approx(1.0));

    auto evens = residues(2048, 2, {0});
    auto direct = banach_density(evens);
    auto nested = banach_nested_tensor_formula(evens);
    CHECK(std::fabs(nested.upper - direct.upper) < 1e-2);
    CHECK(std::fabs(nested.lower - direct.lower) < 1e-2);

    auto none = banach_nested_tensor_formula(IntSet(512));
    CHECK(none.upper == doctest::Approx(0.0));

    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = random_set(2048, 0.1 + 0.08 * trial, rng);
        auto d = banach_density(a);
        auto nst = banach_nested_tensor_formula(a);
        CHECK(std::fabs(d.upper - nst.upper) < 1e-9);
        CHECK(std::fabs(d.lower - nst.lower) < 1e-9);
    }
}

TEST_CASE("density sandwich inequalities with reported slack") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_set(2048, 0.05 + 0.045 * trial, rng);
        auto banach = banach_density(a);
        auto asym = asymptotic_density_bounds(a);
        auto sch = schnirelmann(a);
        CHECK(banach.lower <= asym.lower + banach.slack);
        CHECK(asym.lower <= asym.upper);
        CHECK(asym.upper <= banach.upper + banach.slack);
        CHECK(sch.lower <= asym.lower + 1.0 / 2048);
        CHECK(banach.agreement >= 0.0);
        CHECK(0.0 <= banach.lower);
        CHECK(banach.upper <= 1.0);
    }
}

TEST_CASE("window trace consistency is exact on periodic sets") {
    // when the pattern period divides the window cap, the extreme ratio is
    // attained at the final window length and the recorded agreement is zero
    for (int p : {2, 4, 8}) {
        auto a = residues(2048, p, {0});
        auto r = banach_density(a);
        CHECK(r.agreement == doctest::Approx(0.0));
        CHECK(std::fabs(r.trace_upper.back().second - r.upper) <= r.slack);
        CHECK(std::fabs(r.trace_lower.back().second - r.lower) <= r.slack);
    }
}

TEST_CASE("prefix ordering: running extrema bracket the tail estimates") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> v;
        int n = 50 + static_cast<int>(rng() % 200);
        for (int i = 0; i < n; ++i)
            v.push_back(std::sin(0.1 * i * (trial + 1)) + 0.001 * static_cast<double>(rng() % 100));
        PrefixSequence seq(v);
        auto est = liminf_limsup_nested(seq);
        CHECK(running_extrema_limit(seq, Extremum::minimum) <= est.liminf + 1e-12);
        CHECK(est.liminf <= est.limsup + 1e-12);
        CHECK(est.limsup <= running_extrema_limit(seq, Extremum::maximum) + 1e-12);
    }
}

TEST_CASE("iterated double limits") {
    // outer tails decaying like 1/n need the n-cap sized for the tolerance
    LimitCaps caps{1024, 1 << 16};
    DoubleSequence sum_decay{[](long long n, long long m) {
        return 1.0 / static_cast<double>(n) + 1.0 / static_cast<double>(m);
    }};
    auto r1 = iterated_double_limit(sum_decay, 1e-3, caps);
    REQUIRE(r1.status == LimitStatus::ok);
    CHECK(std::fabs(r1.value) < 1e-6);

    DoubleSequence ratio{[](long long n, long long m) {
        return static_cast<double>(m) / static_cast<double>(n + m);
    }};
    auto r2 = iterated_double_limit(ratio, 1e-3, LimitCaps{64, 1 << 16});
    REQUIRE(r2.status == LimitStatus::ok);
    CHECK(std::fabs(r2.value - 1.0) < 1e-4);

    DoubleSequence osc{[](long long, long long m) { return m % 2 == 0 ? 1.0 : -1.0; }};
    auto r3 = iterated_double_limit(osc, 1e-3, caps);
    CHECK(r3.status == LimitStatus::no_inner_limit);
    CHECK(r3.bad_n == 1);

    // a too-small outer cap is reported loudly, not papered over
    auto r4 = iterated_double_limit(sum_decay, 1e-3, LimitCaps{64, 1 << 16});
    CHECK(r4.status == LimitStatus::cap_too_small);
}

TEST_CASE("iterated limit is stable under monotone reindexing of the inner variable") {
    LimitCaps caps{1024, 1 << 14};
    DoubleSequence base{[](long long n, long long m) {
        return 2.0 + 1.0 / static_cast<double>(n) - 1.0 / static_cast<double>(m);
    }};
    DoubleSequence stretched{[](long long n, long long m) {
        return 2.0 + 1.0 / static_cast<double>(n) - 1.0 / static_cast<double>(2 * m);
    }};
    auto rb = iterated_double_limit(base, 1e-3, caps);
    auto rs = iterated_double_limit(stretched, 1e-3, caps);
    REQUIRE(rb.status == LimitStatus::ok);
    REQUIRE(rs.status == LimitStatus::ok);
    CHECK(std::fabs(rb.value - rs.value) < 1e-3);
}

TEST_CASE("riemann scheme: unit box indicator") {
    auto box = [](double x) { return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0; };
    auto r = riemann_double(box, 1e-6, LimitCaps{4, 1 << 20});
    REQUIRE(r.status == LimitStatus::ok);
    double oracle = quadrature(box, -2.0, 3.0);  // 1 exactly up to quadrature noise
    CHECK(std::fabs(oracle - 1.0) < 1e-9);
    CHECK(std::fabs(r.value - 1.0) < 1e-9);
}

TEST_CASE("riemann scheme: gaussian integral") {
    auto gauss = [](double x) { return std::exp(-x * x); };
    auto r = riemann_double(gauss, 1e-3, LimitCaps{8, 1 << 12});
    REQUIRE(r.status == LimitStatus::ok);
    double oracle = quadrature(gauss, -8.0, 8.0);
    CHECK(std::fabs(oracle - std::sqrt(std::acos(-1.0))) < 1e-9);
    CHECK(std::fabs(r.value - oracle) < 1e-3);
}

TEST_CASE("riemann scheme: slow rational tail") {
    auto cauchy_density = [](double x) { return 1.0 / (1.0 + x * x); };
    auto r = riemann_double(cauchy_density, 1e-2, LimitCaps{160, 1 << 13});
    REQUIRE(r.status == LimitStatus::ok);
    double R = 2000.0;
    double oracle = quadrature(cauchy_density, -R, R) + 2.0 / R;  // analytic tail bound
    CHECK(std::fabs(r.value - oracle) < 1e-2);
    CHECK(std::fabs(r.value - std::acos(-1.0)) < 1e-2);
}

TEST_CASE("limit point detection") {
    std::vector<double> alt;
    for (int n = 1; n <= 64; ++n) alt.push_back(n % 2 == 0 ? 1.0 : -1.0);
    PrefixSequence seq(alt);
    auto hit = limit_point_check(seq, 1.0, 0.1, 10);
    CHECK(hit.reached);
    for (int idx : hit.indices) CHECK(idx % 2 == 0);
    CHECK(!limit_point_check(seq, 0.0, 0.1, 1).reached);

    // fixed rational rotation: values recur along an 8-cycle
    std::vector<double> rot;
    double pi = std::acos(-1.0);
    for (int n = 1; n <= 256; ++n) rot.push_back(std::sin(2 * pi * n * 3.0 / 8.0));
    double target = std::sin(2 * pi * 3.0 / 8.0);
    auto r = limit_point_check(PrefixSequence(rot), target, 0.05, 5);
    CHECK(r.reached);
    CHECK(r.indices.size() >= 5);
}
