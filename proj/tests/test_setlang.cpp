#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "ultracomb/setlang.hpp"

using namespace ultracomb;
using namespace ultracomb::setlang;

namespace {

std::vector<int> elems(const IntSet& s) { return s.elements(); }

// random expression generator paired with an element-wise reference predicate
struct GenExpr {
    std::string text;
    std::function<bool(int)> pred;
};

GenExpr gen_expr(std::mt19937_64& rng, int bound, int depth) {
    if (depth == 0 || rng() % 3 == 0) {
        switch (rng() % 3) {
            case 0: {
                int p = 2 + static_cast<int>(rng() % 5);
                int r = static_cast<int>(rng() % static_cast<unsigned>(p));
                return {"mod " + std::to_string(p) + ": " + std::to_string(r),
                        [p, r](int v) { return v % p == r; }};
            }
            case 1: {
                int lo = static_cast<int>(rng() % static_cast<unsigned>(bound));
                int hi = lo + static_cast<int>(rng() % static_cast<unsigned>(bound - lo));
                return {std::to_string(lo) + ".." + std::to_string(hi),
                        [lo, hi](int v) { return lo <= v && v <= hi; }};
            }
            default: {
                int a = static_cast<int>(rng() % static_cast<unsigned>(bound));
                int b = static_cast<int>(rng() % static_cast<unsigned>(bound));
                return {"{" + std::to_string(a) + ", " + std::to_string(b) + "}",
                        [a, b](int v) { return v == a || v == b; }};
            }
        }
    }
    auto left = gen_expr(rng, bound, depth - 1);
    auto right = gen_expr(rng, bound, depth - 1);
    switch (rng() % 4) {
        case 0:
            return {"(" + left.text + " | " + right.text + ")",
                    [l = left.pred, r = right.pred](int v) { return l(v) || r(v); }};
        case 1:
            return {"(" + left.text + " & " + right.text + ")",
                    [l = left.pred, r = right.pred](int v) { return l(v) && r(v); }};
        case 2:
            return {"(" + left.text + " \\ " + right.text + ")",
                    [l = left.pred, r = right.pred](int v) { return l(v) && !r(v); }};
        default:
            return {"~(" + left.text + ")", [l = left.pred](int v) { return !l(v); }};
    }
}

}  // namespace

TEST_CASE("set literals") {
    auto e = SetExpr::parse("mod 4: 0,2", 16);
    CHECK(elems(e.eval()) == std::vector<int>{0, 2, 4, 6, 8, 10, 12, 14});

    auto diff = SetExpr::parse("0..7 \\ mod 2: 1", 16);
    CHECK(elems(diff.eval()) == std::vector<int>{0, 2, 4, 6});

    CHECK_THROWS_AS(SetExpr::parse("mod 0: 1", 16), ParseError);
}

TEST_CASE("interval list syntax") {
    auto e = SetExpr::parse("1-3,7,9-11", 16);
    CHECK(elems(e.eval()) == std::vector<int>{1, 2, 3, 7, 9, 10, 11});
    auto dots = SetExpr::parse("1..3 | {7} | 9..11", 16);
    CHECK(e.eval() == dots.eval());
    CHECK(elems(SetExpr::parse("{}", 8).eval()).empty());
}

TEST_CASE("set algebra basics") {
    auto u = SetExpr::parse("(mod 3: 0) | (mod 3: 1)", 30).eval();
    CHECK(u.count() == SetExpr::parse("mod 3: 0", 30).eval().count() +
                           SetExpr::parse("mod 3: 1", 30).eval().count());
    auto dbl = SetExpr::parse("~~(mod 5: 2)", 40);
    CHECK(dbl.eval() == SetExpr::parse("mod 5: 2", 40).eval());
}

TEST_CASE("parse errors carry positions") {
    try {
        SetExpr::parse("0..7 \\\n  mod x: 1", 16);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column >= 6);
    }
    CHECK_THROWS_AS(SetExpr::parse("5..2", 16), ParseError);          // empty range
    CHECK_THROWS_AS(SetExpr::parse("0..99", 16), ParseError);         // bound violation
    CHECK_THROWS_AS(SetExpr::parse("mod 4: 7", 16), ParseError);      // residue out of range
    CHECK_THROWS_AS(SetExpr::parse("1 |", 16), ParseError);           // dangling operator
    CHECK_THROWS_AS(SetExpr::parse("", 16), ParseError);
}

TEST_CASE("random set expressions match element-wise evaluation") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        int bound = 8 + static_cast<int>(rng() % 120);
        auto g = gen_expr(rng, bound, 3);
        auto parsed = SetExpr::parse(g.text, bound);
        IntSet got = parsed.eval();
        for (int v = 0; v < bound; ++v) CHECK(got.contains(v) == g.pred(v));
    }
}

TEST_CASE("print then reparse is stable") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        int bound = 8 + static_cast<int>(rng() % 56);
        auto g = gen_expr(rng, bound, 3);
        auto once = SetExpr::parse(g.text, bound);
        std::string printed = once.print();
        auto twice = SetExpr::parse(printed, bound);
        CHECK(twice.print() == printed);
        CHECK(twice.eval() == once.eval());
    }
}

TEST_CASE("parser totality under fuzzing") {
    std::mt19937_64 rng(44);
    const std::string alphabet = "0123456789modx(){},:|&\\~.- \t\n";
    for (int trial = 0; trial < 2000; ++trial) {
        std::string s;
        int len = static_cast<int>(rng() % 24);
        for (int i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
        try {
            auto e = SetExpr::parse(s, 32);
            (void)e.eval();
        } catch (const ParseError&) {
            // positioned rejection is the expected outcome
        }
    }
}

TEST_CASE("function expressions over tuple components") {
    auto f = FuncExpr::parse("(j2 - j1) mod 2",
                             {{"j1", Sort::integer}, {"j2", Sort::integer}});
    CHECK(f.sort() == Sort::integer);
    Value args[] = {Value{1LL}, Value{3LL}};
    CHECK(f.eval_int(args) == 0);
    Value args2[] = {Value{1LL}, Value{4LL}};
    CHECK(f.eval_int(args2) == 1);
}

TEST_CASE("real functions") {
    auto f = FuncExpr::parse("exp(0 - x*x)", {{"x", Sort::real}});
    CHECK(f.sort() == Sort::real);
    Value zero[] = {Value{0.0}};
    CHECK(f.eval_real(zero) == doctest::Approx(1.0));
    Value one[] = {Value{1.0}};
    CHECK(f.eval_real(one) == doctest::Approx(std::exp(-1.0)));

    auto g = FuncExpr::parse("abs(x) + real(2)", {{"x", Sort::real}});
    Value neg[] = {Value{-1.5}};
    CHECK(g.eval_real(neg) == doctest::Approx(3.5));
}

TEST_CASE("booleans, comparisons and conditionals") {
    auto f = FuncExpr::parse("if(j1 < j2 and not (j1 == 0), j2 - j1, 0 - 1)",
                             {{"j1", Sort::integer}, {"j2", Sort::integer}});
    Value a[] = {Value{2LL}, Value{5LL}};
    CHECK(f.eval_int(a) == 3);
    Value b[] = {Value{0LL}, Value{5LL}};
    CHECK(f.eval_int(b) == -1);

    auto p = FuncExpr::parse("j1 < j2 or j1 == j2", {{"j1", Sort::integer}, {"j2", Sort::integer}});
    CHECK(p.sort() == Sort::boolean);
    CHECK(p.eval_bool(a));
}

TEST_CASE("sorts never mix implicitly") {
    CHECK_THROWS_AS(FuncExpr::parse("n + x", {{"n", Sort::integer}, {"x", Sort::real}}),
                    ParseError);
    CHECK_THROWS_AS(FuncExpr::parse("x mod 2", {{"x", Sort::real}}), ParseError);
    CHECK_THROWS_AS(FuncExpr::parse("exp(n)", {{"n", Sort::integer}}), ParseError);
    // literals may adopt the real sort
    auto ok = FuncExpr::parse("x + 1", {{"x", Sort::real}});
    Value v[] = {Value{0.5}};
    CHECK(ok.eval_real(v) == doctest::Approx(1.5));
}

TEST_CASE("division and mod guard rails") {
    auto div0 = FuncExpr::parse("n / 0", {{"n", Sort::integer}});
    Value v[] = {Value{5LL}};
    CHECK_THROWS_AS(div0.eval(v), EvalError);
    auto negmod = FuncExpr::parse("(0 - n) mod 3", {{"n", Sort::integer}});
    CHECK_THROWS_AS(negmod.eval(v), EvalError);
    auto idiv = FuncExpr::parse("n / 2", {{"n", Sort::integer}});
    CHECK(idiv.eval_int(v) == 2);
}

TEST_CASE("random arithmetic matches a reference evaluation") {
    std::mt19937_64 rng(45);
    for (int trial = 0; trial < 300; ++trial) {
        // random integer tree over n with +, -, *, guarded mod
        std::function<std::pair<std::string, std::function<long long(long long)>>(int)> gen =
            [&](int depth) -> std::pair<std::string, std::function<long long(long long)>> {
            if (depth == 0 || rng() % 3 == 0) {
                if (rng() % 2) {
                    long long c = static_cast<long long>(rng() % 9);
                    return {std::to_string(c), [c](long long) { return c; }};
                }
                return {"n", [](long long n) { return n; }};
            }
            auto [ls, lf] = gen(depth - 1);
            auto [rs, rf] = gen(depth - 1);
            switch (rng() % 3) {
                case 0:
                    return {"(" + ls + " + " + rs + ")",
                            [lf, rf](long long n) { return lf(n) + rf(n); }};
                case 1:
                    return {"(" + ls + " * " + rs + ")",
                            [lf, rf](long long n) { return lf(n) * rf(n); }};
                default:
                    return {"(" + ls + " - " + rs + ")",
                            [lf, rf](long long n) { return lf(n) - rf(n); }};
            }
        };
        auto [text, ref] = gen(3);
        auto f = FuncExpr::parse(text, {{"n", Sort::integer}});
        long long n = static_cast<long long>(rng() % 7);
        Value v[] = {Value{n}};
        CHECK(f.eval_int(v) == ref(n));
        // printing stays parseable and equivalent
        auto g = FuncExpr::parse(f.print(), {{"n", Sort::integer}});
        CHECK(g.eval_int(v) == ref(n));
    }
}

TEST_CASE("function parser totality under fuzzing") {
    std::mt19937_64 rng(46);
    const std::string alphabet = "0123456789nxj +-*/%()<>=!,.modandorifexpabsreal";
    for (int trial = 0; trial < 2000; ++trial) {
        std::string s;
        int len = static_cast<int>(rng() % 20);
        for (int i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
        try {
            auto f = FuncExpr::parse(s, {{"n", Sort::integer}, {"x", Sort::real}});
            Value v[] = {Value{3LL}, Value{0.5}};
            (void)f.eval(v);
        } catch (const ParseError&) {
        } catch (const EvalError&) {
        }
    }
}
