#include "fptzone/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>
#include <vector>

#include "fptzone/errors.hpp"

namespace fptzone {

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_node(ExprKind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_const(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Constant;
    n->value = v;
    return n;
}

constexpr int kMaxDepth = 256;

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) throw SyntaxError(pos, what);
    }

    NodePtr parse_expr(int depth) {
        if (depth > kMaxDepth) throw SyntaxError(pos, "a shallower expression (depth limit exceeded)");
        NodePtr lhs = parse_term(depth + 1);
        for (;;) {
            skip_ws();
            if (accept('+')) {
                lhs = make_node(ExprKind::Add, lhs, parse_term(depth + 1));
            } else if (accept('-')) {
                lhs = make_node(ExprKind::Sub, lhs, parse_term(depth + 1));
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_term(int depth) {
        if (depth > kMaxDepth) throw SyntaxError(pos, "a shallower expression (depth limit exceeded)");
        NodePtr lhs = parse_factor(depth + 1);
        for (;;) {
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                std::size_t star = pos;
                if (pos + 1 < text.size() && text[pos + 1] == '*') {
                    throw SyntaxError(star, "'^' (powers are written with '^', not '**')");
                }
                ++pos;
                lhs = make_node(ExprKind::Mul, lhs, parse_factor(depth + 1));
            } else if (accept('/')) {
                lhs = make_node(ExprKind::Div, lhs, parse_factor(depth + 1));
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_factor(int depth) {
        if (depth > kMaxDepth) throw SyntaxError(pos, "a shallower expression (depth limit exceeded)");
        NodePtr base = parse_base(depth + 1);
        skip_ws();
        if (accept('^')) {
            return make_node(ExprKind::Pow, base, parse_factor(depth + 1));
        }
        return base;
    }

    NodePtr parse_base(int depth) {
        if (depth > kMaxDepth) throw SyntaxError(pos, "a shallower expression (depth limit exceeded)");
        skip_ws();
        if (pos >= text.size()) throw SyntaxError(pos, "a number, 't', a function call, or '('");
        char c = text[pos];

        if (c == '-') {
            ++pos;
            return make_node(ExprKind::Neg, parse_base(depth + 1));
        }
        if (c == '(') {
            ++pos;
            NodePtr inner = parse_expr(depth + 1);
            expect(')', "')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return parse_ident(depth);
        }
        throw SyntaxError(pos, "a number, 't', a function call, or '('");
    }

    NodePtr parse_number() {
        std::size_t start = pos;
        bool any_digit = false;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            any_digit = true;
        }
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                ++pos;
                any_digit = true;
            }
        }
        if (!any_digit) throw SyntaxError(start, "a number");
        if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
            std::size_t mark = pos;
            ++pos;
            if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            } else {
                pos = mark;  // 'e' starts an identifier, not an exponent
            }
        }
        std::string token(text.substr(start, pos - start));
        char* end = nullptr;
        double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size() || !std::isfinite(v)) {
            throw SyntaxError(start, "a representable number");
        }
        return make_const(v);
    }

    NodePtr parse_ident(int depth) {
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            ++pos;
        }
        std::string name(text.substr(start, pos - start));
        if (name == "t") return make_node(ExprKind::Time);

        ExprKind kind;
        bool binary = false;
        if (name == "sqrt") kind = ExprKind::Sqrt;
        else if (name == "ln") kind = ExprKind::Ln;
        else if (name == "exp") kind = ExprKind::Exp;
        else if (name == "sin") kind = ExprKind::Sin;
        else if (name == "cos") kind = ExprKind::Cos;
        else if (name == "abs") kind = ExprKind::Abs;
        else if (name == "min") { kind = ExprKind::Min; binary = true; }
        else if (name == "max") { kind = ExprKind::Max; binary = true; }
        else throw UnknownIdentifier(start, name);

        expect('(', "'(' after function name");
        NodePtr first = parse_expr(depth + 1);
        if (binary) {
            skip_ws();
            if (!accept(',')) {
                throw SyntaxError(pos, "',' (" + name + " takes two arguments)");
            }
            NodePtr second = parse_expr(depth + 1);
            expect(')', "')'");
            return make_node(kind, first, second);
        }
        skip_ws();
        if (peek() == ',') {
            throw SyntaxError(pos, "')' (" + name + " takes one argument)");
        }
        expect(')', "')'");
        return make_node(kind, first);
    }
};

double eval_node(const ExprNode* n, double t) {
    switch (n->kind) {
        case ExprKind::Constant: return n->value;
        case ExprKind::Time: return t;
        case ExprKind::Add: return eval_node(n->lhs.get(), t) + eval_node(n->rhs.get(), t);
        case ExprKind::Sub: return eval_node(n->lhs.get(), t) - eval_node(n->rhs.get(), t);
        case ExprKind::Mul: return eval_node(n->lhs.get(), t) * eval_node(n->rhs.get(), t);
        case ExprKind::Div: {
            double den = eval_node(n->rhs.get(), t);
            if (den == 0.0) throw EvalError("division by zero at t = " + std::to_string(t));
            return eval_node(n->lhs.get(), t) / den;
        }
        case ExprKind::Pow: {
            double base = eval_node(n->lhs.get(), t);
            double expo = eval_node(n->rhs.get(), t);
            if (base == 0.0 && expo < 0.0) {
                throw EvalError("zero raised to a negative power at t = " + std::to_string(t));
            }
            if (base < 0.0 && expo != std::floor(expo)) {
                throw EvalError("negative base with non-integer exponent at t = " + std::to_string(t));
            }
            return std::pow(base, expo);
        }
        case ExprKind::Neg: return -eval_node(n->lhs.get(), t);
        case ExprKind::Sqrt: {
            double a = eval_node(n->lhs.get(), t);
            if (a < 0.0) throw EvalError("sqrt of a negative value at t = " + std::to_string(t));
            return std::sqrt(a);
        }
        case ExprKind::Ln: {
            double a = eval_node(n->lhs.get(), t);
            if (a <= 0.0) throw EvalError("ln of a non-positive value at t = " + std::to_string(t));
            return std::log(a);
        }
        case ExprKind::Exp: return std::exp(eval_node(n->lhs.get(), t));
        case ExprKind::Sin: return std::sin(eval_node(n->lhs.get(), t));
        case ExprKind::Cos: return std::cos(eval_node(n->lhs.get(), t));
        case ExprKind::Abs: return std::fabs(eval_node(n->lhs.get(), t));
        case ExprKind::Min:
            return std::fmin(eval_node(n->lhs.get(), t), eval_node(n->rhs.get(), t));
        case ExprKind::Max:
            return std::fmax(eval_node(n->lhs.get(), t), eval_node(n->rhs.get(), t));
    }
    throw EvalError("corrupt expression node");
}

// Print precedence levels mirror the grammar: expr = 0, term = 1, factor = 2,
// base = 3. A child is parenthesized when its own level is below the level its
// position requires, so the printed text re-parses to the identical tree.
int node_level(const ExprNode* n) {
    switch (n->kind) {
        case ExprKind::Add:
        case ExprKind::Sub: return 0;
        case ExprKind::Mul:
        case ExprKind::Div: return 1;
        case ExprKind::Pow: return 2;
        default: return 3;
    }
}

void print_node(const ExprNode* n, int required, std::string& out);

void print_child(const ExprNode* n, int required, std::string& out) {
    if (node_level(n) < required) {
        out += '(';
        print_node(n, 0, out);
        out += ')';
    } else {
        print_node(n, required, out);
    }
}

std::string format_constant(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    double back = std::strtod(buf, nullptr);
    if (back != v) std::snprintf(buf, sizeof(buf), "%.17e", v);
    return buf;
}

void print_node(const ExprNode* n, int /*required*/, std::string& out) {
    switch (n->kind) {
        case ExprKind::Constant:
            if (n->value < 0.0 || std::signbit(n->value)) {
                out += '-';
                out += format_constant(-n->value);
            } else {
                out += format_constant(n->value);
            }
            return;
        case ExprKind::Time: out += 't'; return;
        case ExprKind::Add:
            print_child(n->lhs.get(), 0, out);
            out += " + ";
            print_child(n->rhs.get(), 1, out);
            return;
        case ExprKind::Sub:
            print_child(n->lhs.get(), 0, out);
            out += " - ";
            print_child(n->rhs.get(), 1, out);
            return;
        case ExprKind::Mul:
            print_child(n->lhs.get(), 1, out);
            out += '*';
            print_child(n->rhs.get(), 2, out);
            return;
        case ExprKind::Div:
            print_child(n->lhs.get(), 1, out);
            out += '/';
            print_child(n->rhs.get(), 2, out);
            return;
        case ExprKind::Pow:
            print_child(n->lhs.get(), 3, out);
            out += '^';
            print_child(n->rhs.get(), 2, out);
            return;
        case ExprKind::Neg:
            out += '-';
            print_child(n->lhs.get(), 3, out);
            return;
        case ExprKind::Sqrt:
        case ExprKind::Ln:
        case ExprKind::Exp:
        case ExprKind::Sin:
        case ExprKind::Cos:
        case ExprKind::Abs: {
            const char* name = n->kind == ExprKind::Sqrt ? "sqrt"
                             : n->kind == ExprKind::Ln   ? "ln"
                             : n->kind == ExprKind::Exp  ? "exp"
                             : n->kind == ExprKind::Sin  ? "sin"
                             : n->kind == ExprKind::Cos  ? "cos"
                                                         : "abs";
            out += name;
            out += '(';
            print_node(n->lhs.get(), 0, out);
            out += ')';
            return;
        }
        case ExprKind::Min:
        case ExprKind::Max:
            out += n->kind == ExprKind::Min ? "min(" : "max(";
            print_node(n->lhs.get(), 0, out);
            out += ", ";
            print_node(n->rhs.get(), 0, out);
            out += ')';
            return;
    }
}

bool nodes_equal(const ExprNode* a, const ExprNode* b) {
    if (a == b) return true;
    if (a == nullptr || b == nullptr) return false;
    if (a->kind != b->kind) return false;
    if (a->kind == ExprKind::Constant) {
        // Bitwise comparison so 0.0 and -0.0 stay distinguishable.
        return a->value == b->value && std::signbit(a->value) == std::signbit(b->value);
    }
    return nodes_equal(a->lhs.get(), b->lhs.get()) && nodes_equal(a->rhs.get(), b->rhs.get());
}

const ExprNode* kZeroSingleton = nullptr;

}  // namespace

double TildeExpr::eval(double t) const {
    if (t < 0.0) throw EvalError("expression evaluated at negative t");
    if (!root_) return 0.0;
    double v = eval_node(root_.get(), t);
    if (!std::isfinite(v)) {
        throw EvalError("expression is not finite at t = " + std::to_string(t));
    }
    return v;
}

std::string TildeExpr::pretty() const {
    if (!root_) return "0";
    std::string out;
    print_node(root_.get(), 0, out);
    return out;
}

TildeExpr TildeExpr::constant(double c) { return TildeExpr(make_const(c)); }

TildeExpr TildeExpr::sum(const TildeExpr& a, const TildeExpr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return TildeExpr(make_node(ExprKind::Add, a.root_, b.root_));
}

TildeExpr TildeExpr::difference(const TildeExpr& a, const TildeExpr& b) {
    if (b.is_zero()) return a;
    return TildeExpr(make_node(ExprKind::Sub, a.root_ ? a.root_ : make_const(0.0), b.root_));
}

bool operator==(const TildeExpr& a, const TildeExpr& b) {
    const ExprNode* ra = a.root_ ? a.root_.get() : kZeroSingleton;
    const ExprNode* rb = b.root_ ? b.root_.get() : kZeroSingleton;
    if (ra == nullptr && rb == nullptr) return true;
    if (ra == nullptr || rb == nullptr) {
        const ExprNode* present = ra ? ra : rb;
        return present->kind == ExprKind::Constant && present->value == 0.0 &&
               !std::signbit(present->value);
    }
    return nodes_equal(ra, rb);
}

TildeExpr parse_tilde(std::string_view text) {
    Parser p{text};
    if (p.at_end()) throw SyntaxError(0, "a non-empty expression");
    NodePtr root = p.parse_expr(0);
    if (!p.at_end()) throw SyntaxError(p.pos, "end of input");
    return TildeExpr(std::move(root));
}

}  // namespace fptzone
