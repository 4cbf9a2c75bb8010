#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace ultracomb {

/// k-dimensional subset of a box dims[0] x ... x dims[k-1]. Small boxes
/// (arity <= 3, every side <= 64) are materialized as bitsets; larger ones
/// stay lazy predicates. Membership is total on the box in both forms.
class TensorSet {
public:
    using Predicate = std::function<bool(std::span<const int>)>;

    static TensorSet from_predicate(std::vector<int> dims, Predicate p);

    /// Materialized and initially empty.
    static TensorSet dense(std::vector<int> dims);

    static TensorSet full(std::vector<int> dims) {
        return from_predicate(std::move(dims), [](std::span<const int>) { return true; });
    }

    static TensorSet empty(std::vector<int> dims) {
        return from_predicate(std::move(dims), [](std::span<const int>) { return false; });
    }

    const std::vector<int>& dims() const { return dims_; }
    int arity() const { return static_cast<int>(dims_.size()); }
    bool materialized() const { return !bits_.empty() || pred_ == nullptr; }

    std::uint64_t cell_count() const {
        std::uint64_t t = 1;
        for (int d : dims_) t *= static_cast<std::uint64_t>(d);
        return t;
    }

    bool member(std::span<const int> t) const;

    /// Only valid on materialized sets.
    void set(std::span<const int> t, bool value = true);

    static bool should_materialize(const std::vector<int>& dims);

private:
    TensorSet() = default;

    std::uint64_t flat_index(std::span<const int> t) const;

    std::vector<int> dims_;
    std::vector<std::uint64_t> bits_;  // materialized storage, row-major
    Predicate pred_;                   // lazy storage
};

}  // namespace ultracomb
