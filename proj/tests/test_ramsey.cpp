#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ultracomb/ramsey.hpp"

using namespace ultracomb;

namespace {

bool all_increasing_tuples_inside(const TensorSet& x, const std::vector<int>& h) {
    int k = x.arity();
    std::vector<int> idx(static_cast<size_t>(k));
    auto rec = [&](auto&& self, int pos, int start) -> bool {
        if (pos == k) {
            std::vector<int> tuple;
            for (int i : idx) tuple.push_back(h[static_cast<size_t>(i)]);
            return x.member(tuple);
        }
        for (int i = start; i < static_cast<int>(h.size()); ++i) {
            idx[static_cast<size_t>(pos)] = i;
            if (!self(self, pos + 1, i + 1)) return false;
        }
        return true;
    };
    return rec(rec, 0, 0);
}

}  // namespace

TEST_CASE("ramsey_large on the superdiagonal returns an initial segment") {
    auto x = superdiagonal(2, 16);
    auto h = ramsey_large(x, 6);
    REQUIRE(h.has_value());
    CHECK(*h == std::vector<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("ramsey_large groups a parity-gap relation into one class") {
    auto x = TensorSet::from_predicate(
        {16, 16}, [](std::span<const int> t) { return t[0] < t[1] && (t[1] - t[0]) % 2 == 0; });
    auto h = ramsey_large(x, 5);
    REQUIRE(h.has_value());
    CHECK(h->size() == 5);
    for (size_t i = 1; i < h->size(); ++i) CHECK(((*h)[i] - (*h)[0]) % 2 == 0);
    CHECK(all_increasing_tuples_inside(x, *h));
}

TEST_CASE("ramsey_large respects failure and bounds") {
    CHECK(!ramsey_large(TensorSet::empty({8, 8}), 2).has_value());
    CHECK_THROWS_AS(ramsey_large(superdiagonal(2, 4), 5), std::invalid_argument);
}

TEST_CASE("multi_large splits staggered parity constraints") {
    auto x = TensorSet::from_predicate({32, 32}, [](std::span<const int> t) {
        return t[0] % 2 == 0 && t[1] % 2 == 1 && t[0] < t[1];
    });
    auto hs = multi_large(x, 4);
    REQUIRE(hs.has_value());
    for (int v : (*hs)[0]) CHECK(v % 2 == 0);
    for (int v : (*hs)[1]) CHECK(v % 2 == 1);
    // staggered verification: s1 < s2 over positions
    for (size_t s1 = 0; s1 < 4; ++s1)
        for (size_t s2 = s1 + 1; s2 < 4; ++s2)
            CHECK(x.member(std::vector<int>{(*hs)[0][s1], (*hs)[1][s2]}));
}

TEST_CASE("multi_large full box and contradictory box") {
    auto full = TensorSet::full({12, 12});
    auto hs = multi_large(full, 3);
    REQUIRE(hs.has_value());
    std::vector<int> all;
    for (auto& s : *hs) all.insert(all.end(), s.begin(), s.end());
    std::sort(all.begin(), all.end());
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());  // disjoint

    auto down = TensorSet::from_predicate(
        {12, 12}, [](std::span<const int> t) { return t[0] < t[1] && t[0] > t[1]; });
    CHECK(!multi_large(down, 2).has_value());
}

TEST_CASE("find_homogeneous single color and gap-parity coloring") {
    auto single = find_homogeneous(2, 8, 1, [](std::span<const int>) { return 0; }, 4);
    REQUIRE(single.has_value());
    CHECK(single->elements == std::vector<int>{0, 1, 2, 3});
    CHECK(single->color == 0);

    auto gap = find_homogeneous(
        2, 16, 2, [](std::span<const int> t) { return (t[1] - t[0]) % 2; }, 4);
    REQUIRE(gap.has_value());
    CHECK(gap->elements == std::vector<int>{0, 2, 4, 6});
    CHECK(gap->color == 0);
}

TEST_CASE("find_homogeneous at the two-color triangle threshold") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        std::array<std::array<int, 6>, 6> color{};
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j) color[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                static_cast<int>(rng() % 2);
        auto res = find_homogeneous(
            2, 6, 2,
            [&](std::span<const int> t) {
                return color[static_cast<size_t>(t[0])][static_cast<size_t>(t[1])];
            },
            3);
        REQUIRE(res.has_value());
        const auto& h = res->elements;
        for (size_t a = 0; a < h.size(); ++a)
            for (size_t b = a + 1; b < h.size(); ++b)
                CHECK(color[static_cast<size_t>(h[a])][static_cast<size_t>(h[b])] == res->color);
    }
}

TEST_CASE("find_homogeneous validates color values") {
    CHECK_THROWS_AS(find_homogeneous(2, 8, 0, [](std::span<const int>) { return 0; }, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(find_homogeneous(2, 8, 2, [](std::span<const int>) { return 5; }, 3),
                    std::invalid_argument);
    CHECK(!find_homogeneous(2, 3, 1, [](std::span<const int>) { return 0; }, 4).has_value());
}

TEST_CASE("cauchy subsequence on a constant sequence") {
    std::vector<double> a(32, 2.5);
    auto w = cauchy_subsequence(a, 5);
    REQUIRE(w.has_value());
    CHECK(w->indices == std::vector<int>{1, 2, 3, 4, 5});
    CHECK(w->eps == doctest::Approx(1.0));
}

TEST_CASE("cauchy subsequence controls oscillation and decay") {
    SUBCASE("alternating signs") {
        std::vector<double> a;
        for (int n = 1; n <= 64; ++n) a.push_back(n % 2 == 0 ? 1.0 : -1.0);
        auto w = cauchy_subsequence(a, 5);
        REQUIRE(w.has_value());
        const auto& idx = w->indices;
        for (size_t s = 0; s < idx.size(); ++s)
            for (size_t u = s + 1; u < idx.size(); ++u)
                for (size_t v = u + 1; v < idx.size(); ++v)
                    CHECK(std::fabs(a[static_cast<size_t>(idx[u]) - 1] -
                                    a[static_cast<size_t>(idx[v]) - 1]) <=
                          1.0 / idx[s]);
    }
    SUBCASE("harmonic decay") {
        std::vector<double> a;
        for (int n = 1; n <= 128; ++n) a.push_back(1.0 / n);
        auto w = cauchy_subsequence(a, 5);
        REQUIRE(w.has_value());
        const auto& idx = w->indices;
        for (size_t s = 0; s < idx.size(); ++s)
            for (size_t u = s + 1; u < idx.size(); ++u)
                for (size_t v = u + 1; v < idx.size(); ++v)
                    CHECK(std::fabs(a[static_cast<size_t>(idx[u]) - 1] -
                                    a[static_cast<size_t>(idx[v]) - 1]) <=
                          1.0 / idx[s]);
    }
    SUBCASE("errors and bounds") {
        std::vector<double> a(8, 0.0);
        CHECK_THROWS_AS(cauchy_subsequence(a, 2), std::invalid_argument);
        CHECK(!cauchy_subsequence(a, 9).has_value());
    }
}

TEST_CASE("interleaved verification follows the quantifier exactly") {
    auto full = TensorSet::full({32, 32, 32, 32});
    std::vector<int> a{1, 2, 3, 4, 5, 6, 7, 8, 9};
    CHECK(verify_interleaved(full, a).pass);

    auto ordered = TensorSet::from_predicate({32, 32, 32, 32}, [](std::span<const int> t) {
        return t[0] < t[1] && t[1] < t[2] && t[2] < t[3];
    });
    CHECK(verify_interleaved(ordered, a).pass);

    // knock out one required cell and expect exactly that violation
    auto holed = TensorSet::from_predicate({32, 32, 32, 32}, [](std::span<const int> t) {
        return !(t[0] == 1 && t[1] == 4 && t[2] == 5 && t[3] == 7);
    });
    auto v = verify_interleaved(holed, a);
    CHECK(!v.pass);
    REQUIRE(v.violation.has_value());
    CHECK(v.violation->index_tuple == std::vector<int>{1, 2, 7});  // (i, j, k)
    CHECK(v.violation->value_tuple == std::vector<int>{1, 4, 5, 7});

    std::vector<int> even_len{1, 2, 3, 4};
    CHECK(!verify_interleaved(full, even_len).pass);
    std::vector<int> not_incr{1, 3, 2, 4, 5};
    CHECK(!verify_interleaved(full, not_incr).pass);
}

TEST_CASE("interleaved quantifier counts match direct enumeration") {
    auto full = TensorSet::full({16, 16, 16, 16});
    std::vector<int> a{0, 1, 2, 3, 4, 5, 6};  // len 7 = 2*3+1
    auto v = verify_interleaved(full, a);
    std::uint64_t expect = 0;
    for (int j = 1; 2 * j + 1 <= 7; ++j)
        for (int i = 1; i < 2 * j; ++i)
            for (int k = 2 * j + 2; k <= 7; ++k) ++expect;
    CHECK(v.checks == expect);
}
