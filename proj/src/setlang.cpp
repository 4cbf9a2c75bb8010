#include "ultracomb/setlang.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace ultracomb::setlang {

namespace {

struct Token {
    enum class Kind { integer, real, name, sym, end };
    Kind kind = Kind::end;
    std::string text;
    long long int_val = 0;
    double real_val = 0.0;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : s_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) bump();
        tok_ = Token{};
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= s_.size()) {
            tok_.kind = Token::Kind::end;
            tok_.text = "<end>";
            return;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) bump();
            bool is_real = false;
            if (pos_ + 1 < s_.size() && s_[pos_] == '.' && s_[pos_ + 1] != '.') {
                is_real = true;
                bump();
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) bump();
            }
            if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
                size_t save = pos_;
                bump();
                if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) bump();
                if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    is_real = true;
                    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) bump();
                } else {
                    pos_ = save;  // not an exponent; leave 'e' for a name
                }
            }
            tok_.text = s_.substr(start, pos_ - start);
            if (is_real) {
                tok_.kind = Token::Kind::real;
                tok_.real_val = std::stod(tok_.text);
            } else {
                tok_.kind = Token::Kind::integer;
                try {
                    tok_.int_val = std::stoll(tok_.text);
                } catch (const std::out_of_range&) {
                    throw ParseError("integer literal too large", tok_.line, tok_.col);
                }
            }
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                bump();
            tok_.kind = Token::Kind::name;
            tok_.text = s_.substr(start, pos_ - start);
            return;
        }
        auto two = [&](const char* op) {
            if (pos_ + 1 < s_.size() && s_[pos_] == op[0] && s_[pos_ + 1] == op[1]) {
                tok_.kind = Token::Kind::sym;
                tok_.text = op;
                bump();
                bump();
                return true;
            }
            return false;
        };
        if (two("..") || two("<=") || two(">=") || two("==") || two("!=")) return;
        static const std::string singles = "(){},:|&\\~-+*/%<>";
        if (singles.find(c) != std::string::npos) {
            tok_.kind = Token::Kind::sym;
            tok_.text = std::string(1, c);
            bump();
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

    void bump() {
        if (s_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& s_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

[[noreturn]] void fail(const Token& t, const std::string& what) {
    throw ParseError(what + " (got '" + t.text + "')", t.line, t.col);
}

}  // namespace

// ---------------------------------------------------------------------------
// Set expressions
// ---------------------------------------------------------------------------

struct SetExpr::Node {
    enum class Kind { set_union, intersect, diff, complement, residue, items };
    Kind kind = Kind::items;
    std::shared_ptr<const Node> a, b;
    int modulus = 0;
    std::vector<int> residues;
    std::vector<std::pair<int, int>> items;  // inclusive ranges
};

namespace {

using SetNode = SetExpr::Node;
using SetPtr = std::shared_ptr<const SetNode>;

class SetParser {
public:
    SetParser(Lexer& lx, int bound) : lx_(lx), bound_(bound) {}

    SetPtr parse_set() {
        SetPtr left = parse_diff();
        while (lx_.peek().kind == Token::Kind::sym &&
               (lx_.peek().text == "|" || lx_.peek().text == ",")) {
            lx_.take();
            auto node = std::make_shared<SetNode>();
            node->kind = SetNode::Kind::set_union;
            node->a = left;
            node->b = parse_diff();
            left = node;
        }
        return left;
    }

private:
    SetPtr parse_diff() {
        SetPtr left = parse_inter();
        while (lx_.peek().kind == Token::Kind::sym && lx_.peek().text == "\\") {
            lx_.take();
            auto node = std::make_shared<SetNode>();
            node->kind = SetNode::Kind::diff;
            node->a = left;
            node->b = parse_inter();
            left = node;
        }
        return left;
    }

    SetPtr parse_inter() {
        SetPtr left = parse_atom();
        while (lx_.peek().kind == Token::Kind::sym && lx_.peek().text == "&") {
            lx_.take();
            auto node = std::make_shared<SetNode>();
            node->kind = SetNode::Kind::intersect;
            node->a = left;
            node->b = parse_atom();
            left = node;
        }
        return left;
    }

    SetPtr parse_atom() {
        const Token& t = lx_.peek();
        if (t.kind == Token::Kind::sym && t.text == "~") {
            lx_.take();
            auto node = std::make_shared<SetNode>();
            node->kind = SetNode::Kind::complement;
            node->a = parse_atom();
            return node;
        }
        if (t.kind == Token::Kind::sym && t.text == "(") {
            lx_.take();
            SetPtr inner = parse_set();
            expect_sym(")");
            return inner;
        }
        if (t.kind == Token::Kind::name && t.text == "mod") return parse_residue();
        if (t.kind == Token::Kind::sym && t.text == "{") {
            lx_.take();
            auto node = std::make_shared<SetNode>();
            node->kind = SetNode::Kind::items;
            if (!(lx_.peek().kind == Token::Kind::sym && lx_.peek().text == "}")) {
                node->items.push_back(parse_item());
                while (lx_.peek().kind == Token::Kind::sym && lx_.peek().text == ",") {
                    lx_.take();
                    node->items.push_back(parse_item());
                }
            }
            expect_sym("}");
            return node;
        }
        if (t.kind == Token::Kind::integer) {
            auto node = std::make_shared<SetNode>();
            node->kind = SetNode::Kind::items;
            node->items.push_back(parse_item());
            return node;
        }
        fail(t, "expected a set literal");
    }

    SetPtr parse_residue() {
        lx_.take();  // mod
        Token p = expect_int();
        if (p.int_val < 1) throw ParseError("modulus must be >= 1", p.line, p.col);
        expect_sym(":");
        auto node = std::make_shared<SetNode>();
        node->kind = SetNode::Kind::residue;
        node->modulus = static_cast<int>(p.int_val);
        node->residues.push_back(parse_residue_value(node->modulus));
        while (lx_.peek().kind == Token::Kind::sym && lx_.peek().text == ",") {
            // the comma binds to the residue list; parenthesize to union instead
            lx_.take();
            node->residues.push_back(parse_residue_value(node->modulus));
        }
        return node;
    }

    int parse_residue_value(int modulus) {
        Token r = expect_int();
        if (r.int_val < 0 || r.int_val >= modulus)
            throw ParseError("residue out of range for the modulus", r.line, r.col);
        return static_cast<int>(r.int_val);
    }

    std::pair<int, int> parse_item() {
        Token lo = expect_int();
        check_bound(lo);
        if (lx_.peek().kind == Token::Kind::sym &&
            (lx_.peek().text == ".." || lx_.peek().text == "-")) {
            lx_.take();
            Token hi = expect_int();
            check_bound(hi);
            if (hi.int_val < lo.int_val)
                throw ParseError("empty range: upper end below lower end", hi.line, hi.col);
            return {static_cast<int>(lo.int_val), static_cast<int>(hi.int_val)};
        }
        return {static_cast<int>(lo.int_val), static_cast<int>(lo.int_val)};
    }

    void check_bound(const Token& t) const {
        if (t.int_val < 0 || t.int_val >= bound_)
            throw ParseError("element outside [0, bound)", t.line, t.col);
    }

    Token expect_int() {
        if (lx_.peek().kind != Token::Kind::integer) fail(lx_.peek(), "expected an integer");
        return lx_.take();
    }

    void expect_sym(const std::string& s) {
        if (lx_.peek().kind != Token::Kind::sym || lx_.peek().text != s)
            fail(lx_.peek(), "expected '" + s + "'");
        lx_.take();
    }

    Lexer& lx_;
    int bound_;
};

IntSet eval_node(const SetNode& n, int bound) {
    switch (n.kind) {
        case SetNode::Kind::set_union:
            return eval_node(*n.a, bound) | eval_node(*n.b, bound);
        case SetNode::Kind::intersect:
            return eval_node(*n.a, bound) & eval_node(*n.b, bound);
        case SetNode::Kind::diff:
            return eval_node(*n.a, bound) - eval_node(*n.b, bound);
        case SetNode::Kind::complement:
            return eval_node(*n.a, bound).complement();
        case SetNode::Kind::residue: {
            IntSet s(bound);
            for (int v = 0; v < bound; ++v)
                for (int r : n.residues)
                    if (v % n.modulus == r) s.add(v);
            return s;
        }
        case SetNode::Kind::items: {
            IntSet s(bound);
            for (auto [lo, hi] : n.items)
                for (int v = lo; v <= hi && v < bound; ++v) s.add(v);
            return s;
        }
    }
    throw EvalError("unreachable set node");
}

void print_node(const SetNode& n, std::ostringstream& os) {
    switch (n.kind) {
        case SetNode::Kind::set_union:
            os << "(";
            print_node(*n.a, os);
            os << " | ";
            print_node(*n.b, os);
            os << ")";
            return;
        case SetNode::Kind::intersect:
            os << "(";
            print_node(*n.a, os);
            os << " & ";
            print_node(*n.b, os);
            os << ")";
            return;
        case SetNode::Kind::diff:
            os << "(";
            print_node(*n.a, os);
            os << " \\ ";
            print_node(*n.b, os);
            os << ")";
            return;
        case SetNode::Kind::complement:
            os << "~";
            print_node(*n.a, os);
            return;
        case SetNode::Kind::residue: {
            os << "(mod " << n.modulus << ": ";
            for (size_t i = 0; i < n.residues.size(); ++i) {
                if (i) os << ", ";
                os << n.residues[i];
            }
            os << ")";
            return;
        }
        case SetNode::Kind::items: {
            os << "{";
            for (size_t i = 0; i < n.items.size(); ++i) {
                if (i) os << ", ";
                os << n.items[i].first;
                if (n.items[i].second != n.items[i].first) os << ".." << n.items[i].second;
            }
            os << "}";
            return;
        }
    }
}

}  // namespace

SetExpr SetExpr::parse(const std::string& text, int bound) {
    if (bound < 1) throw std::invalid_argument("SetExpr: bound must be >= 1");
    Lexer lx(text);
    SetParser p(lx, bound);
    SetExpr e;
    e.root_ = p.parse_set();
    e.bound_ = bound;
    if (lx.peek().kind != Token::Kind::end) fail(lx.peek(), "trailing input after expression");
    return e;
}

IntSet SetExpr::eval() const { return eval_node(*root_, bound_); }

std::string SetExpr::print() const {
    std::ostringstream os;
    print_node(*root_, os);
    return os.str();
}

// ---------------------------------------------------------------------------
// Function expressions
// ---------------------------------------------------------------------------

struct FuncExpr::Node {
    enum class Kind { int_lit, real_lit, var, unary, binary, call };
    Kind kind = Kind::int_lit;
    Sort sort = Sort::integer;
    long long i = 0;
    double d = 0.0;
    int var_index = -1;
    std::string op;
    std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using FNode = FuncExpr::Node;
using FPtr = std::shared_ptr<FNode>;

FPtr make_real(double v) {
    auto n = std::make_shared<FNode>();
    n->kind = FNode::Kind::real_lit;
    n->sort = Sort::real;
    n->d = v;
    return n;
}

// integer literals may adopt the real sort when the other operand is real;
// named values and compound expressions never convert implicitly
FPtr coerce_literal(const FPtr& n, Sort want, const Token& at) {
    if (n->sort == want) return n;
    if (want == Sort::real && n->kind == FNode::Kind::int_lit)
        return make_real(static_cast<double>(n->i));
    fail(at, "sort mismatch: integer and real operands do not mix implicitly");
}

class FuncParser {
public:
    FuncParser(Lexer& lx, const std::vector<VarSpec>& vars) : lx_(lx), vars_(vars) {}

    FPtr parse_expr() { return parse_or(); }

private:
    FPtr parse_or() {
        FPtr left = parse_and();
        while (is_name("or")) {
            Token t = lx_.take();
            left = make_bool_op("or", left, parse_and(), t);
        }
        return left;
    }

    FPtr parse_and() {
        FPtr left = parse_cmp();
        while (is_name("and")) {
            Token t = lx_.take();
            left = make_bool_op("and", left, parse_cmp(), t);
        }
        return left;
    }

    FPtr parse_cmp() {
        FPtr left = parse_add();
        const Token& t = lx_.peek();
        if (t.kind == Token::Kind::sym &&
            (t.text == "<" || t.text == "<=" || t.text == ">" || t.text == ">=" ||
             t.text == "==" || t.text == "!=")) {
            Token op = lx_.take();
            FPtr right = parse_add();
            unify(left, right, op);
            if (left->sort == Sort::boolean) fail(op, "cannot compare booleans");
            auto n = std::make_shared<FNode>();
            n->kind = FNode::Kind::binary;
            n->sort = Sort::boolean;
            n->op = op.text;
            n->args = {left, right};
            return n;
        }
        return left;
    }

    FPtr parse_add() {
        FPtr left = parse_mul();
        while (lx_.peek().kind == Token::Kind::sym &&
               (lx_.peek().text == "+" || lx_.peek().text == "-")) {
            Token op = lx_.take();
            FPtr right = parse_mul();
            left = make_arith(op.text, left, right, op);
        }
        return left;
    }

    FPtr parse_mul() {
        FPtr left = parse_unary();
        while (true) {
            const Token& t = lx_.peek();
            std::string op;
            if (t.kind == Token::Kind::sym && (t.text == "*" || t.text == "/" || t.text == "%"))
                op = t.text;
            else if (t.kind == Token::Kind::name && t.text == "mod")
                op = "mod";
            else
                break;
            Token tok = lx_.take();
            if (op == "%") op = "mod";
            FPtr right = parse_unary();
            left = make_arith(op, left, right, tok);
        }
        return left;
    }

    FPtr parse_unary() {
        const Token& t = lx_.peek();
        if (t.kind == Token::Kind::sym && t.text == "-") {
            Token tok = lx_.take();
            FPtr inner = parse_unary();
            if (inner->sort == Sort::boolean) fail(tok, "cannot negate a boolean");
            auto n = std::make_shared<FNode>();
            n->kind = FNode::Kind::unary;
            n->sort = inner->sort;
            n->op = "neg";
            n->args = {inner};
            return n;
        }
        if (t.kind == Token::Kind::name && t.text == "not") {
            Token tok = lx_.take();
            FPtr inner = parse_unary();
            if (inner->sort != Sort::boolean) fail(tok, "'not' needs a boolean");
            auto n = std::make_shared<FNode>();
            n->kind = FNode::Kind::unary;
            n->sort = Sort::boolean;
            n->op = "not";
            n->args = {inner};
            return n;
        }
        return parse_primary();
    }

    FPtr parse_primary() {
        Token t = lx_.take();
        if (t.kind == Token::Kind::integer) {
            auto n = std::make_shared<FNode>();
            n->kind = FNode::Kind::int_lit;
            n->sort = Sort::integer;
            n->i = t.int_val;
            return n;
        }
        if (t.kind == Token::Kind::real) return make_real(t.real_val);
        if (t.kind == Token::Kind::sym && t.text == "(") {
            FPtr inner = parse_expr();
            expect_sym(")");
            return inner;
        }
        if (t.kind == Token::Kind::name) {
            if (lx_.peek().kind == Token::Kind::sym && lx_.peek().text == "(") return parse_call(t);
            for (size_t i = 0; i < vars_.size(); ++i)
                if (vars_[i].name == t.text) {
                    auto n = std::make_shared<FNode>();
                    n->kind = FNode::Kind::var;
                    n->sort = vars_[i].sort;
                    n->var_index = static_cast<int>(i);
                    n->op = t.text;
                    return n;
                }
            fail(t, "unknown name");
        }
        fail(t, "expected an expression");
    }

    FPtr parse_call(const Token& name) {
        expect_sym("(");
        std::vector<FPtr> args;
        if (!(lx_.peek().kind == Token::Kind::sym && lx_.peek().text == ")")) {
            args.push_back(parse_expr());
            while (lx_.peek().kind == Token::Kind::sym && lx_.peek().text == ",") {
                lx_.take();
                args.push_back(parse_expr());
            }
        }
        expect_sym(")");
        auto n = std::make_shared<FNode>();
        n->kind = FNode::Kind::call;
        n->op = name.text;
        if (name.text == "exp") {
            require_args(name, args, 1);
            if (args[0]->sort != Sort::real)
                args[0] = coerce_literal(args[0], Sort::real, name);
            n->sort = Sort::real;
        } else if (name.text == "abs") {
            require_args(name, args, 1);
            if (args[0]->sort == Sort::boolean) fail(name, "abs needs a number");
            n->sort = args[0]->sort;
        } else if (name.text == "real") {
            require_args(name, args, 1);
            if (args[0]->sort != Sort::integer) fail(name, "real() converts integers");
            n->sort = Sort::real;
        } else if (name.text == "if") {
            require_args(name, args, 3);
            if (args[0]->sort != Sort::boolean) fail(name, "if needs a boolean condition");
            unify(args[1], args[2], name);
            n->sort = args[1]->sort;
        } else {
            fail(name, "unknown function");
        }
        n->args.assign(args.begin(), args.end());
        return n;
    }

    FPtr make_arith(const std::string& op, FPtr left, FPtr right, const Token& at) {
        unify(left, right, at);
        if (left->sort == Sort::boolean) fail(at, "arithmetic needs numbers");
        if (op == "mod" && left->sort != Sort::integer) fail(at, "mod needs integers");
        auto n = std::make_shared<FNode>();
        n->kind = FNode::Kind::binary;
        n->sort = left->sort;
        n->op = op;
        n->args = {left, right};
        return n;
    }

    FPtr make_bool_op(const std::string& op, FPtr left, FPtr right, const Token& at) {
        if (left->sort != Sort::boolean || right->sort != Sort::boolean)
            fail(at, "'" + op + "' needs booleans");
        auto n = std::make_shared<FNode>();
        n->kind = FNode::Kind::binary;
        n->sort = Sort::boolean;
        n->op = op;
        n->args = {left, right};
        return n;
    }

    void unify(FPtr& a, FPtr& b, const Token& at) {
        if (a->sort == b->sort) return;
        if (a->sort == Sort::real || b->sort == Sort::real) {
            a = coerce_literal(a, Sort::real, at);
            b = coerce_literal(b, Sort::real, at);
            return;
        }
        fail(at, "sort mismatch");
    }

    bool is_name(const char* n) const {
        return lx_.peek().kind == Token::Kind::name && lx_.peek().text == n;
    }

    void require_args(const Token& name, const std::vector<FPtr>& args, size_t n) {
        if (args.size() != n) fail(name, "wrong argument count for " + name.text);
    }

    void expect_sym(const std::string& s) {
        if (lx_.peek().kind != Token::Kind::sym || lx_.peek().text != s)
            fail(lx_.peek(), "expected '" + s + "'");
        lx_.take();
    }

    Lexer& lx_;
    const std::vector<VarSpec>& vars_;
};

long long as_int(const Value& v) { return std::get<long long>(v); }
double as_real(const Value& v) { return std::get<double>(v); }
bool as_bool(const Value& v) { return std::get<bool>(v); }

Value eval_fnode(const FNode& n, std::span<const Value> args);

Value eval_binary(const FNode& n, std::span<const Value> args) {
    if (n.op == "and") return Value{as_bool(eval_fnode(*n.args[0], args)) &&
                                    as_bool(eval_fnode(*n.args[1], args))};
    if (n.op == "or") return Value{as_bool(eval_fnode(*n.args[0], args)) ||
                                   as_bool(eval_fnode(*n.args[1], args))};
    Value a = eval_fnode(*n.args[0], args);
    Value b = eval_fnode(*n.args[1], args);
    if (n.sort == Sort::boolean) {  // comparison
        bool res;
        if (std::holds_alternative<long long>(a)) {
            long long x = as_int(a), y = as_int(b);
            res = n.op == "<" ? x < y : n.op == "<=" ? x <= y : n.op == ">" ? x > y
                  : n.op == ">=" ? x >= y : n.op == "==" ? x == y : x != y;
        } else {
            double x = as_real(a), y = as_real(b);
            res = n.op == "<" ? x < y : n.op == "<=" ? x <= y : n.op == ">" ? x > y
                  : n.op == ">=" ? x >= y : n.op == "==" ? x == y : x != y;
        }
        return Value{res};
    }
    if (n.sort == Sort::integer) {
        long long x = as_int(a), y = as_int(b);
        if (n.op == "+") return Value{x + y};
        if (n.op == "-") return Value{x - y};
        if (n.op == "*") return Value{x * y};
        if (n.op == "/") {
            if (y == 0) throw EvalError("integer division by zero");
            return Value{x / y};
        }
        if (n.op == "mod") {
            if (y == 0) throw EvalError("mod by zero");
            if (x < 0 || y < 0) throw EvalError("negative mod");
            return Value{x % y};
        }
    } else {
        double x = as_real(a), y = as_real(b);
        if (n.op == "+") return Value{x + y};
        if (n.op == "-") return Value{x - y};
        if (n.op == "*") return Value{x * y};
        if (n.op == "/") {
            if (y == 0.0) throw EvalError("division by zero");
            return Value{x / y};
        }
    }
    throw EvalError("unreachable operator " + n.op);
}

Value eval_fnode(const FNode& n, std::span<const Value> args) {
    switch (n.kind) {
        case FNode::Kind::int_lit:
            return Value{n.i};
        case FNode::Kind::real_lit:
            return Value{n.d};
        case FNode::Kind::var:
            return args[static_cast<size_t>(n.var_index)];
        case FNode::Kind::unary: {
            Value a = eval_fnode(*n.args[0], args);
            if (n.op == "not") return Value{!as_bool(a)};
            if (n.sort == Sort::integer) return Value{-as_int(a)};
            return Value{-as_real(a)};
        }
        case FNode::Kind::binary:
            return eval_binary(n, args);
        case FNode::Kind::call: {
            if (n.op == "if") {
                bool c = as_bool(eval_fnode(*n.args[0], args));
                return eval_fnode(c ? *n.args[1] : *n.args[2], args);
            }
            Value a = eval_fnode(*n.args[0], args);
            if (n.op == "exp") return Value{std::exp(as_real(a))};
            if (n.op == "real") return Value{static_cast<double>(as_int(a))};
            if (n.op == "abs") {
                if (std::holds_alternative<long long>(a)) return Value{std::llabs(as_int(a))};
                return Value{std::fabs(as_real(a))};
            }
            throw EvalError("unreachable call " + n.op);
        }
    }
    throw EvalError("unreachable node");
}

void print_fnode(const FNode& n, std::ostringstream& os) {
    switch (n.kind) {
        case FNode::Kind::int_lit:
            os << n.i;
            return;
        case FNode::Kind::real_lit: {
            std::ostringstream tmp;
            tmp << n.d;
            std::string s = tmp.str();
            os << s;
            if (s.find('.') == std::string::npos && s.find('e') == std::string::npos) os << ".0";
            return;
        }
        case FNode::Kind::var:
            os << n.op;
            return;
        case FNode::Kind::unary:
            os << (n.op == "not" ? "not " : "-");
            os << "(";
            print_fnode(*n.args[0], os);
            os << ")";
            return;
        case FNode::Kind::binary:
            os << "(";
            print_fnode(*n.args[0], os);
            os << " " << n.op << " ";
            print_fnode(*n.args[1], os);
            os << ")";
            return;
        case FNode::Kind::call:
            os << n.op << "(";
            for (size_t i = 0; i < n.args.size(); ++i) {
                if (i) os << ", ";
                print_fnode(*n.args[i], os);
            }
            os << ")";
            return;
    }
}

}  // namespace

FuncExpr FuncExpr::parse(const std::string& text, std::vector<VarSpec> vars) {
    Lexer lx(text);
    FuncParser p(lx, vars);
    FuncExpr e;
    auto root = p.parse_expr();
    if (lx.peek().kind != Token::Kind::end) fail(lx.peek(), "trailing input after expression");
    e.root_ = root;
    e.vars_ = std::move(vars);
    e.sort_ = root->sort;
    return e;
}

Value FuncExpr::eval(std::span<const Value> args) const {
    if (args.size() != vars_.size()) throw EvalError("argument count mismatch");
    for (size_t i = 0; i < args.size(); ++i) {
        bool ok = (vars_[i].sort == Sort::integer && std::holds_alternative<long long>(args[i])) ||
                  (vars_[i].sort == Sort::real && std::holds_alternative<double>(args[i])) ||
                  (vars_[i].sort == Sort::boolean && std::holds_alternative<bool>(args[i]));
        if (!ok) throw EvalError("argument sort mismatch for " + vars_[i].name);
    }
    return eval_fnode(*root_, args);
}

long long FuncExpr::eval_int(std::span<const Value> args) const {
    if (sort_ != Sort::integer) throw EvalError("expression is not integer-sorted");
    return std::get<long long>(eval(args));
}

double FuncExpr::eval_real(std::span<const Value> args) const {
    Value v = eval(args);
    if (std::holds_alternative<double>(v)) return std::get<double>(v);
    if (std::holds_alternative<long long>(v))
        return static_cast<double>(std::get<long long>(v));  // boundary conversion
    throw EvalError("expression is not numeric");
}

bool FuncExpr::eval_bool(std::span<const Value> args) const {
    if (sort_ != Sort::boolean) throw EvalError("expression is not boolean-sorted");
    return std::get<bool>(eval(args));
}

std::string FuncExpr::print() const {
    std::ostringstream os;
    print_fnode(*root_, os);
    return os.str();
}

}  // namespace ultracomb::setlang
