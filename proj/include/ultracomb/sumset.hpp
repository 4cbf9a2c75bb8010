#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ultracomb/intset.hpp"
#include "ultracomb/pattern.hpp"

namespace ultracomb {

enum class SumsetMode { additive, multiplicative };

/// Shape of a structured sumset: k component sets with multiplicities
/// n_1..n_k. The combination sums take n_s distinct elements from set s.
struct SumsetSpec {
    std::vector<int> multiplicities;
    SumsetMode mode = SumsetMode::additive;
    bool allow_zero = false;  // multiplicative candidates normally exclude 0

    int k() const { return static_cast<int>(multiplicities.size()); }
    int total_arity() const {
        int n = 0;
        for (int v : multiplicities) n += v;
        return n;
    }
    void validate(int arity_cap = 6) const;
};

struct SumsetCertificate {
    SumsetSpec spec;
    std::vector<std::vector<int>> sets;  // k disjoint increasing sequences
    std::uint64_t verified_combinations = 0;
};

/// Lazy k-dimensional set of tuples whose entry total lies in A; totals at or
/// beyond the bound are non-members.
TensorSet sum_preimage(const IntSet& a, int k);
TensorSet prod_preimage(const IntSet& a, int k);

/// The full pattern family for a spec: every arrangement of the component
/// roles with the prescribed preimage sizes, each bound to the same n-ary
/// preimage of A. The family size is the multinomial n!/(n_1!...n_k!).
PatternSpec compile_spec(const SumsetSpec& spec, const IntSet& a, int arity_cap = 6);

std::vector<Surjection> spec_surjections(const SumsetSpec& spec);

struct SumsetSearchOptions {
    SearchOptions search;
    int arity_cap = 6;
};

/// Increasing B of length len with every total of k distinct members in A.
std::optional<std::vector<int>> find_ksum_same(const IntSet& a, int k, int len,
                                               const SumsetSearchOptions& opt = {});

/// Disjoint increasing B_1..B_k with the staggered totals
/// b_{1,j_1}+...+b_{k,j_k} in A for all j_1 < ... < j_k.
std::optional<std::vector<std::vector<int>>> find_ksum_distinct(const IntSet& a, int k, int len,
                                                                const SumsetSearchOptions& opt = {},
                                                                SumsetMode mode = SumsetMode::additive,
                                                                bool allow_zero = false);

/// Disjoint B, C with every total b + c in A (both index orders). Falls back
/// to splitting a single 2-fold sequence at even/odd positions when the
/// two-set search fails.
std::optional<std::pair<std::vector<int>, std::vector<int>>> find_full_sumset(
    const IntSet& a, int len, const SumsetSearchOptions& opt = {});

/// General detector; every returned certificate re-verifies.
std::optional<SumsetCertificate> find_general(const IntSet& a, const SumsetSpec& spec, int len,
                                              const SumsetSearchOptions& opt = {});

/// Independent re-check: disjointness, monotonicity, and every combination
/// total in A, by direct enumeration of element choices.
Verdict verify_certificate(const IntSet& a, const SumsetCertificate& cert);

}  // namespace ultracomb
