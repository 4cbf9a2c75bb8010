#include "ultracomb/ramsey.hpp"

#include <cmath>
#include <stdexcept>

namespace ultracomb {

namespace {

// Single family with strict staggering across the given roles.
detail::ConstraintFamily strict_family(std::vector<int> roles, const TensorSet* target) {
    detail::ConstraintFamily f;
    f.roles = std::move(roles);
    f.strict_after.assign(f.roles.size() > 1 ? f.roles.size() - 1 : 0, 1);
    f.target = target;
    return f;
}

}  // namespace

std::optional<std::vector<int>> ramsey_large(const TensorSet& x, int h, const SearchOptions& opt) {
    int k = x.arity();
    int N = x.dims().front();
    for (int d : x.dims())
        if (d != N) throw std::invalid_argument("ramsey_large: box must be a power of one ground");
    if (h < k) throw std::invalid_argument("ramsey_large: need h >= arity");
    if (h > N) throw std::invalid_argument("ramsey_large: h exceeds the ground");

    std::vector<RoleGround> grounds{RoleGround{N, true}};
    auto fam = strict_family(std::vector<int>(static_cast<size_t>(k), 0), &x);
    auto res = detail::search_families(grounds, {fam}, h, opt);
    if (!res.witness) return std::nullopt;
    return res.witness->sequences.front();
}

std::optional<std::vector<std::vector<int>>> multi_large(const TensorSet& x, int h,
                                                         const SearchOptions& opt) {
    int k = x.arity();
    if (h < 1) throw std::invalid_argument("multi_large: need h >= 1");
    std::vector<RoleGround> grounds;
    for (int d : x.dims()) grounds.push_back(RoleGround{d, true});
    std::vector<int> roles(static_cast<size_t>(k));
    for (int s = 0; s < k; ++s) roles[static_cast<size_t>(s)] = s;
    auto fam = strict_family(std::move(roles), &x);
    auto res = detail::search_families(grounds, {fam}, h, opt);
    if (!res.witness) return std::nullopt;
    return res.witness->sequences;
}

std::optional<HomogeneousSet> find_homogeneous(int k, int N, int colors, const Coloring& c,
                                               int h, const SearchOptions& opt) {
    if (colors < 1) throw std::invalid_argument("find_homogeneous: invalid color range");
    if (h < k) throw std::invalid_argument("find_homogeneous: need h >= arity");
    if (h > N) return std::nullopt;

    auto color_of = [&](std::span<const int> t) {
        int col = c(t);
        if (col < 0 || col >= colors)
            throw std::invalid_argument("find_homogeneous: coloring value out of range");
        return col;
    };

    for (int col = 0; col < colors; ++col) {
        TensorSet cls = TensorSet::from_predicate(
            std::vector<int>(static_cast<size_t>(k), N), [&, col](std::span<const int> t) {
                for (size_t s = 1; s < t.size(); ++s)
                    if (t[s - 1] >= t[s]) return false;
                return color_of(t) == col;
            });
        auto found = ramsey_large(cls, h, opt);
        if (found) return HomogeneousSet{*found, col};
    }
    return std::nullopt;
}

std::optional<CauchyWitness> cauchy_subsequence(std::span<const double> prefix, int t,
                                                const SearchOptions& opt) {
    int N = static_cast<int>(prefix.size());
    if (t < 3) throw std::invalid_argument("cauchy_subsequence: need t >= 3");
    for (double v : prefix)
        if (!std::isfinite(v)) throw std::invalid_argument("cauchy_subsequence: values must be finite");
    if (t > N) return std::nullopt;

    // elements are 0-based; the bound uses the 1-based position of the first
    // triple entry
    TensorSet cls = TensorSet::from_predicate(
        std::vector<int>{N, N, N}, [prefix](std::span<const int> e) {
            if (!(e[0] < e[1] && e[1] < e[2])) return false;
            double gap = std::fabs(prefix[static_cast<size_t>(e[1])] - prefix[static_cast<size_t>(e[2])]);
            return gap <= 1.0 / static_cast<double>(e[0] + 1);
        });
    auto found = ramsey_large(cls, t, opt);
    if (!found) return std::nullopt;
    CauchyWitness w;
    for (int e : *found) w.indices.push_back(e + 1);
    w.eps = 1.0 / static_cast<double>(w.indices.front());
    return w;
}

Verdict verify_interleaved(const TensorSet& x, std::span<const int> a) {
    Verdict v;
    if (x.arity() != 4) {
        v.pass = false;
        v.violation = Violation{Violation::Kind::shape, -1, {}, {}, "target must be 4-dimensional"};
        return v;
    }
    int len = static_cast<int>(a.size());
    if (len < 3 || len % 2 == 0) {
        v.pass = false;
        v.violation = Violation{Violation::Kind::shape, -1, {}, {}, "sequence length must be odd and >= 3"};
        return v;
    }
    for (int s = 1; s < len; ++s)
        if (a[static_cast<size_t>(s) - 1] >= a[static_cast<size_t>(s)]) {
            v.pass = false;
            v.violation = Violation{Violation::Kind::monotonicity, -1, {s + 1}, {}, "sequence not increasing"};
            return v;
        }
    // 1-based positions: i < 2j and 2j+1 < k <= len
    for (int j = 1; 2 * j + 1 <= len; ++j) {
        for (int i = 1; i < 2 * j; ++i) {
            for (int k = 2 * j + 2; k <= len; ++k) {
                std::vector<int> tuple{a[static_cast<size_t>(i) - 1], a[static_cast<size_t>(2 * j) - 1],
                                       a[static_cast<size_t>(2 * j)], a[static_cast<size_t>(k) - 1]};
                ++v.checks;
                if (!x.member(tuple)) {
                    v.pass = false;
                    v.violation = Violation{Violation::Kind::membership, -1, {i, j, k}, tuple,
                                            "interleaved tuple outside target"};
                    return v;
                }
            }
        }
    }
    return v;
}

}  // namespace ultracomb
