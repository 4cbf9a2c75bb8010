#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ultracomb/pattern.hpp"
#include "ultracomb/tensor_set.hpp"

namespace ultracomb {

/// H of size h over [0, N) whose increasing k-tuples all lie in X, or nullopt
/// within the search bounds. Throws when h exceeds the ground.
std::optional<std::vector<int>> ramsey_large(const TensorSet& x, int h,
                                             const SearchOptions& opt = {});

/// k pairwise-disjoint increasing sequences of length h whose staggered
/// tuples (one element per sequence, at strictly increasing positions) all
/// lie in X.
std::optional<std::vector<std::vector<int>>> multi_large(const TensorSet& x, int h,
                                                         const SearchOptions& opt = {});

/// Coloring of increasing k-tuples over [0, N); values in [0, colors).
using Coloring = std::function<int(std::span<const int>)>;

struct HomogeneousSet {
    std::vector<int> elements;
    int color = 0;
};

/// Runs the large-set search on each color class in color order. Reports
/// nullopt only when the bound N is too small for the requested size.
std::optional<HomogeneousSet> find_homogeneous(int k, int N, int colors, const Coloring& c,
                                               int h, const SearchOptions& opt = {});

struct CauchyWitness {
    std::vector<int> indices;  // 1-based positions into the prefix
    double eps = 0.0;          // = 1 / first index
};

/// Strictly increasing 1-based indices n_1 < ... < n_t into the prefix such
/// that every triple s < u < v satisfies |a[n_u] - a[n_v]| <= 1/n_s.
std::optional<CauchyWitness> cauchy_subsequence(std::span<const double> prefix, int t,
                                                const SearchOptions& opt = {});

/// Checks membership of (a_i, a_{2j}, a_{2j+1}, a_k) for all 1-based
/// i < 2j and 2j+1 < k <= len(a); the sequence length must be odd.
Verdict verify_interleaved(const TensorSet& x, std::span<const int> a);

}  // namespace ultracomb
