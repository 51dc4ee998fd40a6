#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace fptzone {

enum class ExprKind {
    Constant,
    Time,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Neg,
    Sqrt,
    Ln,
    Exp,
    Sin,
    Cos,
    Abs,
    Min,
    Max,
};

struct ExprNode {
    ExprKind kind;
    double value = 0.0;                   // Constant only
    std::shared_ptr<const ExprNode> lhs;  // unary operand / left operand / first argument
    std::shared_ptr<const ExprNode> rhs;  // right operand / second argument
};

// Immutable expression in the single variable t. Copies share the underlying
// tree, so a TildeExpr is cheap to pass around and safe to evaluate from
// several threads at once.
class TildeExpr {
public:
    TildeExpr() = default;  // the zero function
    explicit TildeExpr(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}

    // Evaluates at t >= 0. Throws EvalError when the value leaves the real
    // domain (ln of a non-positive argument, division by zero, a non-finite
    // result) and on negative t.
    double eval(double t) const;

    // Canonical text form; parse_tilde(pretty()) reproduces the tree exactly.
    std::string pretty() const;

    const ExprNode* root() const { return root_.get(); }
    bool is_zero() const { return root_ == nullptr; }

    static TildeExpr constant(double c);
    static TildeExpr sum(const TildeExpr& a, const TildeExpr& b);
    static TildeExpr difference(const TildeExpr& a, const TildeExpr& b);

    friend bool operator==(const TildeExpr& a, const TildeExpr& b);
    friend bool operator!=(const TildeExpr& a, const TildeExpr& b) { return !(a == b); }

private:
    std::shared_ptr<const ExprNode> root_;  // null encodes the constant 0
};

// Parses the barrier fluctuation grammar:
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := base ('^' factor)?
//   base   := number | 't' | func '(' expr (',' expr)? ')' | '(' expr ')' | '-' base
//   func   := sqrt | ln | exp | sin | cos | abs | min | max
//
// Whitespace is insignificant. min and max take two arguments, the other
// functions exactly one. Throws SyntaxError or UnknownIdentifier with the
// byte offset of the offending token.
TildeExpr parse_tilde(std::string_view text);

}  // namespace fptzone
