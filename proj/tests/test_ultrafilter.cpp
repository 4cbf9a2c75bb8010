#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ultracomb/report.hpp"
#include "ultracomb/ultrafilter.hpp"

using namespace ultracomb;

namespace {

// left-associated triple membership, kept independent of the library's
// right-associated evaluation
bool triple_member_left(const FiniteUltrafilter& u, const FiniteUltrafilter& v,
                        const FiniteUltrafilter& w, int isz, int jsz, int ksz,
                        const SubsetMask& x) {
    FiniteUltrafilter uv = tensor_product(u, v);
    Mask good = 0;
    for (int p = 0; p < isz * jsz; ++p)
        if (member(w, fiber(x, isz * jsz, ksz, p))) good |= Mask{1} << p;
    return member(uv, SubsetMask{isz * jsz, good});
}

}  // namespace

TEST_CASE("principal membership") {
    auto u = principal(3, 1);
    CHECK(member(u, SubsetMask{3, 0b110}));   // {1,2}
    CHECK(!member(u, SubsetMask{3, 0b101}));  // {0,2}
    auto one = principal(1, 0);
    CHECK(member(one, SubsetMask{1, 0b1}));
    CHECK(!member(one, SubsetMask{1, 0}));
    CHECK_THROWS_AS(principal(3, 3), std::out_of_range);
    CHECK_THROWS_AS(member(u, SubsetMask{4, 0b1}), std::invalid_argument);
}

TEST_CASE("ultrafilter axioms hold for every principal point and subset") {
    for (int n = 1; n <= 4; ++n) {
        Mask full = (Mask{1} << n) - 1;
        for (int p = 0; p < n; ++p) {
            auto u = principal(n, p);
            CHECK(!member(u, SubsetMask{n, 0}));
            CHECK(member(u, SubsetMask{n, full}));
            for (Mask a = 0; a <= full; ++a) {
                SubsetMask sa{n, a};
                // exactly one of each complementary pair
                CHECK(member(u, sa) != member(u, sa.complement()));
                for (Mask b = 0; b <= full; ++b) {
                    SubsetMask sb{n, b};
                    if ((a & b) == a) CHECK((member(u, sa) ? member(u, sb) : true));  // superset
                    CHECK(member(u, SubsetMask{n, a & b}) == (member(u, sa) && member(u, sb)));
                    if ((a & b) == 0) {
                        int add = (member(u, sa) ? 1 : 0) + (member(u, sb) ? 1 : 0);
                        int uni = member(u, SubsetMask{n, a | b}) ? 1 : 0;
                        CHECK(add == uni);  // two-valued finite additivity
                    }
                }
            }
        }
    }
}

TEST_CASE("image ultrafilters") {
    auto u = principal(4, 3);
    CHECK(image(GroundMap::constant(4, 3, 2), u).point == 2);
    CHECK(image(GroundMap::identity(4), u) == u);

    GroundMap mod2(4, 2, {0, 1, 0, 1});
    auto img = image(mod2, u);
    CHECK(img == principal(2, 1));
    for (Mask y = 0; y < 4; ++y) {
        SubsetMask sy{2, y};
        CHECK(image_member_definitional(mod2, u, sy) == member(img, sy));
    }
    CHECK_THROWS_AS(GroundMap(3, 2, {0, 1}), std::invalid_argument);  // partial map
}

TEST_CASE("image functoriality over all composable small maps") {
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            for (int c = 1; c <= 3; ++c) {
                // all maps g: a -> b and f: b -> c
                std::vector<GroundMap> gs, fs;
                std::vector<int> gv(static_cast<size_t>(a), 0);
                while (true) {
                    gs.emplace_back(a, b, gv);
                    int i = a - 1;
                    while (i >= 0 && gv[static_cast<size_t>(i)] == b - 1) gv[static_cast<size_t>(i--)] = 0;
                    if (i < 0) break;
                    ++gv[static_cast<size_t>(i)];
                }
                std::vector<int> fv(static_cast<size_t>(b), 0);
                while (true) {
                    fs.emplace_back(b, c, fv);
                    int i = b - 1;
                    while (i >= 0 && fv[static_cast<size_t>(i)] == c - 1) fv[static_cast<size_t>(i--)] = 0;
                    if (i < 0) break;
                    ++fv[static_cast<size_t>(i)];
                }
                for (const auto& g : gs)
                    for (const auto& f : fs)
                        for (int p = 0; p < a; ++p) {
                            auto u = principal(a, p);
                            CHECK(image(GroundMap::compose(f, g), u) == image(f, image(g, u)));
                        }
            }
}

TEST_CASE("tensor product is principal at the pair and matches the defining condition") {
    auto u = principal(2, 1), v = principal(2, 0);
    CHECK(tensor_product(u, v) == principal(4, 2));  // (1,0) row-major

    for (int pu = 0; pu < 2; ++pu)
        for (int pv = 0; pv < 2; ++pv) {
            auto a = principal(2, pu), b = principal(2, pv);
            auto t = tensor_product(a, b);
            for (Mask x = 0; x < 16; ++x) {
                SubsetMask sx{4, x};
                CHECK(tensor_member_definitional(a, b, sx) == member(t, sx));
            }
        }
}

TEST_CASE("tensor product extends the product family") {
    for (int pu = 0; pu < 3; ++pu)
        for (int pv = 0; pv < 2; ++pv) {
            auto u = principal(3, pu), v = principal(2, pv);
            for (Mask a = 0; a < 8; ++a)
                for (Mask b = 0; b < 4; ++b) {
                    Mask rect = 0;
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 2; ++j)
                            if (((a >> i) & 1) && ((b >> j) & 1)) rect |= Mask{1} << (i * 2 + j);
                    bool in_family = member(u, SubsetMask{3, a}) && member(v, SubsetMask{2, b});
                    if (in_family)
                        CHECK(tensor_member_definitional(u, v, SubsetMask{6, rect}));
                }
        }
}

TEST_CASE("tensor associativity on binary grounds") {
    for (int pa = 0; pa < 2; ++pa)
        for (int pb = 0; pb < 2; ++pb)
            for (int pc = 0; pc < 2; ++pc) {
                auto u = principal(2, pa), v = principal(2, pb), w = principal(2, pc);
                CHECK(tensor_product(u, tensor_product(v, w)) ==
                      tensor_product(tensor_product(u, v), w));
                for (Mask x = 0; x < 256; ++x) {
                    SubsetMask sx{8, x};
                    CHECK(tensor3_member_definitional(u, v, w, 2, 2, 2, sx) ==
                          triple_member_left(u, v, w, 2, 2, 2, sx));
                }
            }
}

TEST_CASE("projections recover tensor factors") {
    ProductSpace pair({3, 3});
    for (int pu = 0; pu < 3; ++pu)
        for (int pv = 0; pv < 3; ++pv) {
            auto u = principal(3, pu), v = principal(3, pv);
            auto t = tensor_product(u, v);
            int ax1[] = {1}, ax2[] = {2};
            CHECK(project(t, pair, ax1) == u);
            CHECK(project(t, pair, ax2) == v);
            int both[] = {1, 2};
            CHECK(project(t, pair, both) == t);
        }
    ProductSpace triple({2, 3, 4});
    auto z = principal(24, triple.encode(std::vector<int>{1, 2, 3}));
    int ax13[] = {1, 3};
    CHECK(project(z, triple, ax13) == principal(8, ProductSpace({2, 4}).encode(std::vector<int>{1, 3})));
    int bad[] = {0};
    CHECK_THROWS_AS(project(z, triple, bad), std::invalid_argument);
}

TEST_CASE("pseudo-sum on a truncated segment") {
    auto u = principal(16, 2), v = principal(16, 3);
    auto s = pseudo_sum(u, v);
    CHECK(s == principal(16, 5));
    std::uint64_t mismatches = 0;
    for (Mask a = 0; a < (Mask{1} << 16); ++a)  // every subset of [0, 16)
        if (pseudo_sum_member_definitional(u, v, SubsetMask{16, a}) !=
            member(s, SubsetMask{16, a}))
            ++mismatches;
    CHECK(mismatches == 0);

    CHECK(pseudo_sum(principal(16, 0), v) == v);
    CHECK_THROWS_AS(pseudo_sum(principal(16, 9), principal(16, 8)), OverflowBeyondTruncation);
}

TEST_CASE("pseudo-sum associativity below the truncation") {
    int N = 12;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b + a < N; ++b)
            for (int c = 0; a + b + c < N; ++c) {
                auto x = principal(N, a), y = principal(N, b), z = principal(N, c);
                CHECK(pseudo_sum(pseudo_sum(x, y), z) == pseudo_sum(x, pseudo_sum(y, z)));
            }
}

TEST_CASE("pseudo-sum agrees with the summed tensor image") {
    int N = 10;
    // total sum map into [0, 2N-1)
    std::vector<int> vals;
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < N; ++m) vals.push_back(n + m);
    GroundMap sum_map(N * N, 2 * N - 1, vals);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            auto img = image(sum_map, tensor_product(principal(N, a), principal(N, b)));
            if (a + b < N) CHECK(pseudo_sum(principal(N, a), principal(N, b)).point == img.point);
        }
}

TEST_CASE("star extension composes outer coordinates") {
    ProductSpace pair({2, 2});
    auto v = principal(4, pair.encode(std::vector<int>{1, 0}));
    auto w = principal(4, pair.encode(std::vector<int>{0, 1}));
    CHECK(star_extension(v, w, 2, 2) == principal(4, pair.encode(std::vector<int>{1, 1})));

    for (int pv = 0; pv < 4; ++pv)
        for (int pw = 0; pw < 4; ++pw) {
            auto a = principal(4, pv), b = principal(4, pw);
            auto u1 = principal(2, pv / 2), u2 = principal(2, pw % 2);
            for (Mask x = 0; x < 16; ++x) {
                SubsetMask sx{4, x};
                CHECK(star_member_definitional(a, b, 2, 2, sx) ==
                      tensor_member_definitional(u1, u2, sx));
            }
        }
    // idempotency on 2x2 and 2x3
    for (int isz : {2}) {
        for (int jsz : {2, 3}) {
            int total = isz * jsz;
            for (int p = 0; p < total; ++p) {
                auto w2 = principal(total, p);
                for (Mask x = 0; x < (Mask{1} << total); ++x)
                    CHECK(star_member_definitional(w2, w2, isz, jsz, SubsetMask{total, x}) ==
                          member(w2, SubsetMask{total, x}));
            }
        }
    }
}

TEST_CASE("check_model passes on small grounds") {
    ModelCheckConfig one;
    one.i_size = 1;
    one.j_size = 1;
    auto r1 = check_model(one);
    CHECK(r1.pass());
    CHECK(r1.clauses.front().checked == 2);  // 1 ultrafilter x 2 subsets

    ModelCheckConfig two;
    two.i_size = 2;
    two.j_size = 2;
    auto r2 = check_model(two);
    CHECK(r2.pass());
    CHECK(r2.clauses.front().checked == 4 * 16);

    ModelCheckConfig three;
    three.i_size = 3;
    three.j_size = 3;
    three.k_size = 2;
    auto r3 = check_model(three);
    CHECK(r3.pass());
    CHECK(r3.clauses.front().checked == 9 * 512);
}

TEST_CASE("check_model respects caps") {
    ModelCheckConfig big;
    big.i_size = 7;
    big.j_size = 2;
    CHECK_THROWS_AS(check_model(big), CapExceeded);
    ModelCheckConfig wide;
    wide.i_size = 5;
    wide.j_size = 5;
    CHECK_THROWS_AS(check_model(wide), CapExceeded);  // 25-bit scan over the default cap
}

TEST_CASE("check_model is deterministic across worker counts") {
    ModelCheckConfig cfg;
    cfg.i_size = 3;
    cfg.j_size = 2;
    cfg.k_size = 2;
    auto serial = check_model(cfg);
    cfg.threads = 4;
    auto parallel = check_model(cfg);
    CHECK(report_json(serial).dump() == report_json(parallel).dump());
}

TEST_CASE("model report serializes") {
    ModelCheckConfig cfg;
    cfg.i_size = 2;
    cfg.j_size = 2;
    auto r = check_model(cfg);
    auto j = report_json(r);
    CHECK(j["pass"] == true);
    CHECK(j["clauses"].is_array());
    CHECK(j["clauses"].size() == r.clauses.size());
    CHECK(r.text().find("all clauses pass") != std::string::npos);
}
