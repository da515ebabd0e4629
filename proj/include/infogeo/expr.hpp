#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace infogeo {

enum class UnaryOp { neg, exp, log, sqrt, abs, sign, atan };
enum class BinaryOp { add, sub, mul, div, pow };

struct ExprNode;

// Immutable symbolic expression tree. Copies share structure, so passing an
// Expr by value is cheap and evaluating one from several threads is safe.
class Expr {
public:
    Expr() = default;  // empty placeholder; not a valid expression
    explicit Expr(std::shared_ptr<const ExprNode> node);

    static Expr constant(double value);
    // Named constant (pi, e); prints by name.
    static Expr named_constant(std::string name, double value);
    static Expr variable(std::string name);
    static Expr unary(UnaryOp op, Expr arg);
    static Expr binary(BinaryOp op, Expr lhs, Expr rhs);

    const ExprNode& node() const { return *node_; }

    bool is_constant() const;
    // Value of a constant node; only meaningful when is_constant().
    double constant_value() const;

    // Whether `var` occurs anywhere in the tree.
    bool depends_on(std::string_view var) const;
    std::set<std::string> variables() const;
    std::size_t size() const;

private:
    std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
    enum class Kind { constant, variable, unary, binary };
    Kind kind;
    double value = 0.0;  // constant
    std::string name;    // variable, or named constant
    UnaryOp uop = UnaryOp::neg;
    BinaryOp bop = BinaryOp::add;
    Expr lhs;  // unary argument, or left operand
    Expr rhs;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, const Expr& exponent);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sqrt(const Expr& a);
Expr abs(const Expr& a);
Expr sign(const Expr& a);
Expr atan(const Expr& a);

using Bindings = std::map<std::string, double, std::less<>>;

// Parses infix formula text. Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | '+' unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | ident | ident '(' expr ')' | '(' expr ')'
// so `-x^2` is `-(x^2)` and `2^-1` is `2^(-1)`. Identifiers other than
// pi, e and the function names are variables. Throws ParseError.
Expr parse(std::string_view text);

// Symbolic partial derivative. d|u| = sign(u) du and d sign(u) = 0, both
// valid almost everywhere. The result is lightly folded (0*x, 1*x, x+0 and
// constant subtrees) but not otherwise simplified.
Expr differentiate(const Expr& e, std::string_view var);

// Throws EvalError on unbound variables or domain errors (log of a
// non-positive number, division by zero, negative base with non-integer
// exponent, 0 to a negative power, non-finite result).
double evaluate(const Expr& e, const Bindings& bindings);

// Re-parseable text form with minimal parentheses.
std::string to_string(const Expr& e);

}  // namespace infogeo
