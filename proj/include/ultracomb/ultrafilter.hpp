#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ultracomb {

using Mask = std::uint64_t;

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OverflowBeyondTruncation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite index set {0, ..., size-1}.
struct GroundSet {
    int size = 1;
    std::string label;

    explicit GroundSet(int n, std::string lbl = {}) : size(n), label(std::move(lbl)) {
        if (n < 1) throw std::invalid_argument("GroundSet: size must be >= 1");
    }
};

/// Subset of a ground of at most 64 elements, one bit per element.
struct SubsetMask {
    int ground_size = 0;
    Mask bits = 0;

    SubsetMask(int n, Mask b) : ground_size(n), bits(b) {
        if (n < 0 || n > 64) throw std::invalid_argument("SubsetMask: ground size out of range");
        if (n < 64) bits &= (Mask{1} << n) - 1;
    }

    bool test(int e) const { return (bits >> e) & 1u; }
    SubsetMask complement() const { return {ground_size, ~bits}; }
    std::string hex() const;
};

/// Total map between ground sets; values[x] = f(x).
struct GroundMap {
    int from_size = 0;
    int to_size = 0;
    std::vector<int> values;

    GroundMap(int from, int to, std::vector<int> vals)
        : from_size(from), to_size(to), values(std::move(vals)) {
        if (static_cast<int>(values.size()) != from_size)
            throw std::invalid_argument("GroundMap: partial map (wrong domain length)");
        for (int v : values)
            if (v < 0 || v >= to_size)
                throw std::invalid_argument("GroundMap: value out of codomain");
    }

    int operator()(int x) const { return values.at(static_cast<size_t>(x)); }

    static GroundMap identity(int n);
    static GroundMap constant(int from, int to, int c);
    static GroundMap compose(const GroundMap& f, const GroundMap& g);  // f after g

    /// f^{-1}(Y) as a subset of the domain.
    SubsetMask preimage(const SubsetMask& y) const;
};

/// Ordered product of grounds with row-major element encoding:
/// (i_1, ..., i_r) -> ((i_1 * n_2 + i_2) * n_3 + ...) .
struct ProductSpace {
    std::vector<int> factors;

    explicit ProductSpace(std::vector<int> f) : factors(std::move(f)) {
        if (factors.empty()) throw std::invalid_argument("ProductSpace: no factors");
        for (int n : factors)
            if (n < 1) throw std::invalid_argument("ProductSpace: factor size must be >= 1");
    }

    int arity() const { return static_cast<int>(factors.size()); }

    int total() const {
        long long t = 1;
        for (int n : factors) t *= n;
        if (t > (1 << 26)) throw CapExceeded("ProductSpace: too large to enumerate");
        return static_cast<int>(t);
    }

    int encode(std::span<const int> idx) const;
    std::vector<int> decode(int e) const;

    /// Projection onto the given 1-based axes, as a total map of elements.
    GroundMap projection(std::span<const int> axes) const;

    ProductSpace select(std::span<const int> axes) const;
};

/// Ultrafilter on a finite ground set; necessarily principal. The membership
/// predicate is the subset contract everything else is checked against.
struct FiniteUltrafilter {
    int ground_size = 1;
    int point = 0;

    bool operator==(const FiniteUltrafilter&) const = default;
};

FiniteUltrafilter principal(const GroundSet& ground, int i);
FiniteUltrafilter principal(int ground_size, int i);

/// True iff point lies in the subset. Satisfies the ultrafilter axioms:
/// excludes the empty set, contains the ground, is closed under supersets and
/// intersections, and holds exactly one of each complementary pair.
bool member(const FiniteUltrafilter& u, const SubsetMask& s);

/// Image ultrafilter: membership of Y is membership of f^{-1}(Y).
FiniteUltrafilter image(const GroundMap& f, const FiniteUltrafilter& u);
bool image_member_definitional(const GroundMap& f, const FiniteUltrafilter& u, const SubsetMask& y);

/// Tensor product on the row-major product ground of sizes (|I|, |J|).
FiniteUltrafilter tensor_product(const FiniteUltrafilter& u, const FiniteUltrafilter& v);

/// Membership of X in U⊗V evaluated from the defining condition: the set of
/// first coordinates whose vertical fiber is V-large must be U-large.
bool tensor_member_definitional(const FiniteUltrafilter& u, const FiniteUltrafilter& v,
                                const SubsetMask& x);

/// Same for triple products, associated to the right.
bool tensor3_member_definitional(const FiniteUltrafilter& u, const FiniteUltrafilter& v,
                                 const FiniteUltrafilter& w, int i_size, int j_size, int k_size,
                                 const SubsetMask& x);

/// Vertical fiber X_i of a subset of I x J.
SubsetMask fiber(const SubsetMask& x, int i_size, int j_size, int i);

FiniteUltrafilter project(const FiniteUltrafilter& w, const ProductSpace& space,
                          std::span<const int> axes);

/// Pseudo-sum on the truncated segment [0, N): principal at the sum of the
/// two points. Throws OverflowBeyondTruncation when the sum escapes [0, N).
FiniteUltrafilter pseudo_sum(const FiniteUltrafilter& u, const FiniteUltrafilter& v);

/// Membership of A in U⊕V from the defining shift condition:
/// {n | A - n is V-large} must be U-large, A - n the leftward shift.
bool pseudo_sum_member_definitional(const FiniteUltrafilter& u, const FiniteUltrafilter& v,
                                    const SubsetMask& a);

/// Extension of (a,b)*(c,d) = (a,d) to ultrafilters on I x J, evaluated from
/// the defining double-membership condition.
FiniteUltrafilter star_extension(const FiniteUltrafilter& v, const FiniteUltrafilter& w,
                                 int i_size, int j_size);
bool star_member_definitional(const FiniteUltrafilter& v, const FiniteUltrafilter& w,
                              int i_size, int j_size, const SubsetMask& x);

// ---------------------------------------------------------------------------
// Exhaustive model checking
// ---------------------------------------------------------------------------

struct ModelCheckConfig {
    int i_size = 2;
    int j_size = 2;
    std::optional<int> k_size;
    int ground_cap = 6;         // per-ground size cap
    int product_bits_cap = 24;  // cap on subset-scan width
    int map_target_cap = 3;     // exhaustive maps up to this target size
    int sampled_maps = 32;      // seeded samples beyond the exhaustive cap
    std::uint64_t seed = 1;
    int threads = 1;
};

struct ClauseResult {
    std::string name;
    std::uint64_t checked = 0;
    bool pass = true;
    std::optional<std::string> counterexample;
};

struct ModelReport {
    ModelCheckConfig config;
    std::vector<ClauseResult> clauses;

    bool pass() const {
        for (const auto& c : clauses)
            if (!c.pass) return false;
        return true;
    }

    std::uint64_t total_checked() const {
        std::uint64_t t = 0;
        for (const auto& c : clauses) t += c.checked;
        return t;
    }

    std::string text() const;
};

/// Runs every clause against every principal ultrafilter on the (product)
/// grounds, scanning all subsets. Throws CapExceeded when the requested sizes
/// leave the tractable range.
ModelReport check_model(const ModelCheckConfig& cfg);

}  // namespace ultracomb
