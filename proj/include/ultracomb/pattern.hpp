#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ultracomb/tensor_set.hpp"

namespace ultracomb {

/// Map from positions {1..arity} onto roles {1..codomain}; values stored
/// 1-based. Every role must occur.
struct Surjection {
    int arity = 0;
    int codomain = 0;
    std::vector<int> values;

    Surjection(int k, int m, std::vector<int> vals);

    static Surjection constant(int k) { return {k, 1, std::vector<int>(static_cast<size_t>(k), 1)}; }
    static Surjection identity(int k);

    int role_at(int s) const { return values[static_cast<size_t>(s)]; }  // 0-based s, 1-based role
};

struct RoleGround {
    int size = 1;
    bool ordered = true;  // initial segment of the naturals: sequences must increase
};

/// A family of surjections sharing (arity, codomain), one target set per
/// surjection, and one ground per role. Axis s of the target for phi is sized
/// by the ground of role phi(s).
struct PatternSpec {
    std::vector<Surjection> phis;
    std::vector<TensorSet> targets;  // parallel to phis
    std::vector<RoleGround> grounds; // one per role

    void validate() const;
    int arity() const { return phis.empty() ? 0 : phis.front().arity; }
    int roles() const { return static_cast<int>(grounds.size()); }
};

/// Candidate sequences, one per role, all of the same depth. Values are
/// ground elements (0-based); sequence positions are 1-based in reports.
struct Witness {
    std::vector<std::vector<int>> sequences;
    int depth = 0;
};

struct GoodOrdering {
    std::vector<int> sigma;  // sigma[s] = 1-based position, for s = 0..k-1
};

struct Violation {
    enum class Kind { distinctness, monotonicity, membership, shape };
    Kind kind = Kind::membership;
    int phi_index = -1;
    std::vector<int> index_tuple;  // 1-based positions
    std::vector<int> value_tuple;
    std::string detail;
};

struct Verdict {
    bool pass = true;
    std::uint64_t checks = 0;
    std::optional<Violation> violation;
};

/// True iff j is nondecreasing and strictly increases at every s with
/// phi(s) >= phi(s+1). Index values are 1-based.
bool is_admissible(const Surjection& phi, std::span<const int> j);

/// Explicit recursion: repeatedly take the least position holding the least
/// remaining value. Always a good ordering of the tuple.
GoodOrdering good_ordering(std::span<const int> j);

bool is_good_ordering(const GoodOrdering& sigma, std::span<const int> j);

/// Visits the admissible tuples in [1..L]^k in lexicographic order.
void enumerate_admissible(const Surjection& phi, int L,
                          const std::function<void(std::span<const int>)>& visit);
std::vector<std::vector<int>> admissible_tuples(const Surjection& phi, int L);
std::uint64_t count_admissible(const Surjection& phi, int L);

Verdict verify_witness(const PatternSpec& spec, const Witness& w);

enum class SearchStrategy { exhaustive, greedy };

struct SearchOptions {
    SearchStrategy strategy = SearchStrategy::exhaustive;
    std::uint64_t seed = 1;
    int restarts = 8;                  // greedy only
    std::uint64_t node_budget = 200000; // greedy, per restart
    int threads = 1;
    /// Extra candidate filter (role, position n, value, partial sequences).
    /// Must never reject a value that admits a completion.
    std::function<bool(int, int, int, const std::vector<std::vector<int>>&)> admit;
};

struct SearchResult {
    std::optional<Witness> witness;
    std::uint64_t nodes = 0;
    bool exhausted = false;  // exhaustive strategy covered the whole space
};

/// Builds the sequences position by position, outer over depth and inner over
/// role, keeping every forced target fiber extendable; dead ends backtrack.
/// Exhaustive mode is complete within the ground and depth bounds. Every
/// returned witness has been re-verified.
SearchResult search_witness(const PatternSpec& spec, int depth, const SearchOptions& opt = {});

/// Strictly increasing k-tuples over [0, N).
TensorSet superdiagonal(int k, int N);

namespace detail {

/// One membership requirement: for each admissible index tuple (nondecreasing,
/// strict where flagged) the staggered value tuple must lie in the target.
/// A tie j_s = j_{s+1} is only legal where roles[s] < roles[s+1], so tuple
/// positions are visited in assignment order.
struct ConstraintFamily {
    std::vector<int> roles;             // 0-based role per axis
    std::vector<std::uint8_t> strict_after;  // size arity-1
    const TensorSet* target = nullptr;
    int phi_index = -1;
};

SearchResult search_families(const std::vector<RoleGround>& grounds,
                             const std::vector<ConstraintFamily>& families, int depth,
                             const SearchOptions& opt);

Verdict verify_families(const std::vector<RoleGround>& grounds,
                        const std::vector<ConstraintFamily>& families, const Witness& w);

}  // namespace detail

}  // namespace ultracomb
