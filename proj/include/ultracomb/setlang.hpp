#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ultracomb/intset.hpp"

namespace ultracomb::setlang {

struct ParseError : std::runtime_error {
    int line = 1;
    int column = 1;
    ParseError(std::string msg, int ln, int col)
        : std::runtime_error(std::move(msg)), line(ln), column(col) {}
};

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Set expressions: literals (lists, ranges, residue classes) combined with
// union, intersection, difference and complement, all within [0, bound).
// ---------------------------------------------------------------------------

class SetExpr {
public:
    /// Parses or throws ParseError with position.
    static SetExpr parse(const std::string& text, int bound);

    IntSet eval() const;
    std::string print() const;  // normalized form; stable under reparsing
    int bound() const { return bound_; }

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    int bound_ = 1;
};

// ---------------------------------------------------------------------------
// Function expressions over declared variables. Integer and real sorts never
// mix implicitly; real(e) converts explicitly. Comparisons yield booleans,
// usable in if(c, a, b) and and/or/not.
// ---------------------------------------------------------------------------

enum class Sort { integer, real, boolean };

using Value = std::variant<long long, double, bool>;

struct VarSpec {
    std::string name;
    Sort sort = Sort::integer;
};

class FuncExpr {
public:
    static FuncExpr parse(const std::string& text, std::vector<VarSpec> vars);

    Sort sort() const { return sort_; }

    /// args must match the declared variable list by position.
    Value eval(std::span<const Value> args) const;

    long long eval_int(std::span<const Value> args) const;
    double eval_real(std::span<const Value> args) const;  // accepts integer results
    bool eval_bool(std::span<const Value> args) const;

    std::string print() const;

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    std::vector<VarSpec> vars_;
    Sort sort_ = Sort::integer;
};

}  // namespace ultracomb::setlang
