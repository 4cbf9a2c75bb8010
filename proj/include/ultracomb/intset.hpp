#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ultracomb {

/// Finite subset of [0, bound) with bitset semantics. All set algebra is
/// relative to the bound; operands must share it.
class IntSet {
public:
    explicit IntSet(int bound)
        : bound_(bound), words_((static_cast<size_t>(bound) + 63) / 64, 0) {
        if (bound < 1) throw std::invalid_argument("IntSet: bound must be >= 1");
    }

    static IntSet full(int bound) {
        IntSet s(bound);
        for (auto& w : s.words_) w = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    int bound() const { return bound_; }

    bool contains(int v) const {
        if (v < 0 || v >= bound_) return false;
        return (words_[static_cast<size_t>(v) >> 6] >> (v & 63)) & 1u;
    }

    void add(int v) {
        check(v);
        words_[static_cast<size_t>(v) >> 6] |= std::uint64_t{1} << (v & 63);
    }

    void remove(int v) {
        check(v);
        words_[static_cast<size_t>(v) >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }

    int count() const {
        int c = 0;
        for (auto w : words_) c += __builtin_popcountll(w);
        return c;
    }

    /// |A ∩ [lo, hi]| for 0 <= lo <= hi < bound; empty range gives 0.
    int count_range(int lo, int hi) const {
        if (lo > hi) return 0;
        int c = 0;
        for (int v = lo; v <= hi; ++v)
            if (contains(v)) ++c;
        return c;
    }

    std::vector<int> elements() const {
        std::vector<int> out;
        for (int v = 0; v < bound_; ++v)
            if (contains(v)) out.push_back(v);
        return out;
    }

    /// Prefix counts p[t] = |A ∩ [0, t-1]| for t = 0..bound.
    std::vector<int> prefix_counts() const {
        std::vector<int> p(static_cast<size_t>(bound_) + 1, 0);
        for (int v = 0; v < bound_; ++v)
            p[static_cast<size_t>(v) + 1] = p[v] + (contains(v) ? 1 : 0);
        return p;
    }

    IntSet& operator|=(const IntSet& o) { return apply(o, [](std::uint64_t a, std::uint64_t b) { return a | b; }); }
    IntSet& operator&=(const IntSet& o) { return apply(o, [](std::uint64_t a, std::uint64_t b) { return a & b; }); }
    IntSet& operator-=(const IntSet& o) { return apply(o, [](std::uint64_t a, std::uint64_t b) { return a & ~b; }); }

    friend IntSet operator|(IntSet a, const IntSet& b) { return a |= b; }
    friend IntSet operator&(IntSet a, const IntSet& b) { return a &= b; }
    friend IntSet operator-(IntSet a, const IntSet& b) { return a -= b; }

    /// Complement within [0, bound).
    IntSet complement() const {
        IntSet r(bound_);
        for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
        r.trim();
        return r;
    }

    bool operator==(const IntSet& o) const { return bound_ == o.bound_ && words_ == o.words_; }

private:
    template <class F>
    IntSet& apply(const IntSet& o, F f) {
        if (o.bound_ != bound_) throw std::invalid_argument("IntSet: bound mismatch");
        for (size_t i = 0; i < words_.size(); ++i) words_[i] = f(words_[i], o.words_[i]);
        trim();
        return *this;
    }

    void check(int v) const {
        if (v < 0 || v >= bound_) throw std::out_of_range("IntSet: element out of [0, bound)");
    }

    void trim() {
        int tail = bound_ & 63;
        if (tail) words_.back() &= (std::uint64_t{1} << tail) - 1;
    }

    int bound_;
    std::vector<std::uint64_t> words_;
};

}  // namespace ultracomb
