#include "infogeo/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <utility>

#include "infogeo/error.hpp"

namespace infogeo {

Expr::Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}

Expr Expr::constant(double value) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::constant;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::named_constant(std::string name, double value) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::constant;
    n->value = value;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::variable(std::string name) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::variable;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::unary(UnaryOp op, Expr arg) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::unary;
    n->uop = op;
    n->lhs = std::move(arg);
    return Expr(std::move(n));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::binary;
    n->bop = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return Expr(std::move(n));
}

bool Expr::is_constant() const { return node_->kind == ExprNode::Kind::constant; }

double Expr::constant_value() const { return node_->value; }

bool Expr::depends_on(std::string_view var) const {
    switch (node_->kind) {
        case ExprNode::Kind::constant: return false;
        case ExprNode::Kind::variable: return node_->name == var;
        case ExprNode::Kind::unary: return node_->lhs.depends_on(var);
        case ExprNode::Kind::binary:
            return node_->lhs.depends_on(var) || node_->rhs.depends_on(var);
    }
    return false;
}

namespace {

void collect_variables(const Expr& e, std::set<std::string>& out) {
    const auto& n = e.node();
    switch (n.kind) {
        case ExprNode::Kind::constant: break;
        case ExprNode::Kind::variable: out.insert(n.name); break;
        case ExprNode::Kind::unary: collect_variables(n.lhs, out); break;
        case ExprNode::Kind::binary:
            collect_variables(n.lhs, out);
            collect_variables(n.rhs, out);
            break;
    }
}

}  // namespace

std::set<std::string> Expr::variables() const {
    std::set<std::string> out;
    collect_variables(*this, out);
    return out;
}

std::size_t Expr::size() const {
    switch (node_->kind) {
        case ExprNode::Kind::constant:
        case ExprNode::Kind::variable: return 1;
        case ExprNode::Kind::unary: return 1 + node_->lhs.size();
        case ExprNode::Kind::binary: return 1 + node_->lhs.size() + node_->rhs.size();
    }
    return 1;
}

// ---------------------------------------------------------------------------
// Folding constructors

namespace {

bool is_value(const Expr& e, double v) { return e.is_constant() && e.constant_value() == v; }

bool is_integer(double v) { return std::isfinite(v) && std::floor(v) == v && std::fabs(v) < 9.0e15; }

Expr fold_or(double v, const Expr& fallback) { return std::isfinite(v) ? Expr::constant(v) : fallback; }

}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
    if (is_value(a, 0.0)) return b;
    if (is_value(b, 0.0)) return a;
    Expr raw = Expr::binary(BinaryOp::add, a, b);
    if (a.is_constant() && b.is_constant())
        return fold_or(a.constant_value() + b.constant_value(), raw);
    return raw;
}

Expr operator-(const Expr& a, const Expr& b) {
    if (is_value(b, 0.0)) return a;
    if (is_value(a, 0.0)) return -b;
    Expr raw = Expr::binary(BinaryOp::sub, a, b);
    if (a.is_constant() && b.is_constant())
        return fold_or(a.constant_value() - b.constant_value(), raw);
    return raw;
}

Expr operator*(const Expr& a, const Expr& b) {
    if (is_value(a, 0.0) || is_value(b, 0.0)) return Expr::constant(0.0);
    if (is_value(a, 1.0)) return b;
    if (is_value(b, 1.0)) return a;
    if (is_value(a, -1.0)) return -b;
    if (is_value(b, -1.0)) return -a;
    Expr raw = Expr::binary(BinaryOp::mul, a, b);
    if (a.is_constant() && b.is_constant())
        return fold_or(a.constant_value() * b.constant_value(), raw);
    return raw;
}

Expr operator/(const Expr& a, const Expr& b) {
    if (is_value(b, 1.0)) return a;
    if (is_value(a, 0.0) && !is_value(b, 0.0)) return Expr::constant(0.0);
    Expr raw = Expr::binary(BinaryOp::div, a, b);
    if (a.is_constant() && b.is_constant() && b.constant_value() != 0.0)
        return fold_or(a.constant_value() / b.constant_value(), raw);
    return raw;
}

Expr operator-(const Expr& a) {
    if (a.is_constant()) return Expr::constant(-a.constant_value());
    if (a.node().kind == ExprNode::Kind::unary && a.node().uop == UnaryOp::neg) return a.node().lhs;
    return Expr::unary(UnaryOp::neg, a);
}

Expr pow(const Expr& base, const Expr& exponent) {
    if (is_value(exponent, 1.0)) return base;
    if (is_value(exponent, 0.0)) return Expr::constant(1.0);
    Expr raw = Expr::binary(BinaryOp::pow, base, exponent);
    if (base.is_constant() && exponent.is_constant()) {
        const double b = base.constant_value();
        const double x = exponent.constant_value();
        if (b > 0.0 || (b < 0.0 && is_integer(x))) return fold_or(std::pow(b, x), raw);
    }
    return raw;
}

namespace {

Expr fold_unary(UnaryOp op, const Expr& a) {
    Expr raw = Expr::unary(op, a);
    if (!a.is_constant()) return raw;
    const double v = a.constant_value();
    switch (op) {
        case UnaryOp::neg: return Expr::constant(-v);
        case UnaryOp::exp: return fold_or(std::exp(v), raw);
        case UnaryOp::log: return v > 0.0 ? fold_or(std::log(v), raw) : raw;
        case UnaryOp::sqrt: return v >= 0.0 ? fold_or(std::sqrt(v), raw) : raw;
        case UnaryOp::abs: return Expr::constant(std::fabs(v));
        case UnaryOp::sign: return Expr::constant(v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0));
        case UnaryOp::atan: return Expr::constant(std::atan(v));
    }
    return raw;
}

}  // namespace

Expr exp(const Expr& a) { return fold_unary(UnaryOp::exp, a); }
Expr log(const Expr& a) { return fold_unary(UnaryOp::log, a); }
Expr sqrt(const Expr& a) { return fold_unary(UnaryOp::sqrt, a); }
Expr abs(const Expr& a) { return fold_unary(UnaryOp::abs, a); }
Expr sign(const Expr& a) { return fold_unary(UnaryOp::sign, a); }
Expr atan(const Expr& a) { return fold_unary(UnaryOp::atan, a); }

// ---------------------------------------------------------------------------
// Parser

namespace {

struct FunctionName {
    std::string_view name;
    UnaryOp op;
};

constexpr FunctionName kFunctions[] = {
    {"exp", UnaryOp::exp},   {"log", UnaryOp::log},   {"sqrt", UnaryOp::sqrt},
    {"abs", UnaryOp::abs},   {"sign", UnaryOp::sign}, {"atan", UnaryOp::atan},
};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse_all() {
        Expr e = parse_expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parse_expr() {
        Expr lhs = parse_term();
        for (;;) {
            if (accept('+'))
                lhs = Expr::binary(BinaryOp::add, lhs, parse_term());
            else if (accept('-'))
                lhs = Expr::binary(BinaryOp::sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    Expr parse_term() {
        Expr lhs = parse_unary();
        for (;;) {
            if (accept('*'))
                lhs = Expr::binary(BinaryOp::mul, lhs, parse_unary());
            else if (accept('/'))
                lhs = Expr::binary(BinaryOp::div, lhs, parse_unary());
            else
                return lhs;
        }
    }

    Expr parse_unary() {
        if (accept('-')) return Expr::unary(UnaryOp::neg, parse_unary());
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        if (accept('^')) return Expr::binary(BinaryOp::pow, base, parse_unary());
        return base;
    }

    Expr parse_primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = parse_expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t n = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0) {
            pos_ = start;
            fail("malformed number");
        }
        // Exponent part only when followed by digits, so `2*e` style input
        // never gets swallowed.
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
            if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
                pos_ = look;
                digits();
            }
        }
        double value = 0.0;
        const char* first = text_.data() + start;
        const char* last = text_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) {
            pos_ = start;
            fail("malformed number");
        }
        return Expr::constant(value);
    }

    Expr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            for (const auto& f : kFunctions) {
                if (f.name == name) {
                    ++pos_;
                    Expr arg = parse_expr();
                    if (!accept(')')) fail("expected ')'");
                    return Expr::unary(f.op, arg);
                }
            }
            pos_ = start;
            fail("unknown function '" + std::string(name) + "'");
        }
        if (name == "pi") return Expr::named_constant("pi", std::numbers::pi);
        if (name == "e") return Expr::named_constant("e", std::numbers::e);
        return Expr::variable(std::string(name));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Differentiation

Expr differentiate(const Expr& e, std::string_view var) {
    const auto& n = e.node();
    switch (n.kind) {
        case ExprNode::Kind::constant: return Expr::constant(0.0);
        case ExprNode::Kind::variable: return Expr::constant(n.name == var ? 1.0 : 0.0);
        case ExprNode::Kind::unary: {
            const Expr& u = n.lhs;
            if (!u.depends_on(var)) return Expr::constant(0.0);
            const Expr du = differentiate(u, var);
            switch (n.uop) {
                case UnaryOp::neg: return -du;
                case UnaryOp::exp: return e * du;
                case UnaryOp::log: return du / u;
                case UnaryOp::sqrt: return du / (Expr::constant(2.0) * e);
                case UnaryOp::abs: return sign(u) * du;
                case UnaryOp::sign: return Expr::constant(0.0);
                case UnaryOp::atan: return du / (Expr::constant(1.0) + pow(u, Expr::constant(2.0)));
            }
            break;
        }
        case ExprNode::Kind::binary: {
            const Expr& u = n.lhs;
            const Expr& v = n.rhs;
            const bool du_nz = u.depends_on(var);
            const bool dv_nz = v.depends_on(var);
            if (!du_nz && !dv_nz) return Expr::constant(0.0);
            const Expr du = du_nz ? differentiate(u, var) : Expr::constant(0.0);
            const Expr dv = dv_nz ? differentiate(v, var) : Expr::constant(0.0);
            switch (n.bop) {
                case BinaryOp::add: return du + dv;
                case BinaryOp::sub: return du - dv;
                case BinaryOp::mul: return du * v + u * dv;
                case BinaryOp::div:
                    if (!dv_nz) return du / v;
                    return (du * v - u * dv) / pow(v, Expr::constant(2.0));
                case BinaryOp::pow:
                    if (!dv_nz) return v * pow(u, v - Expr::constant(1.0)) * du;
                    if (!du_nz) return e * log(u) * dv;
                    return e * (dv * log(u) + v * du / u);
            }
            break;
        }
    }
    return Expr::constant(0.0);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

[[noreturn]] void domain_error(const std::string& what, const Expr& at) {
    throw EvalError(what + " in '" + to_string(at) + "'");
}

double eval_node(const Expr& e, const Bindings& b) {
    const auto& n = e.node();
    switch (n.kind) {
        case ExprNode::Kind::constant: return n.value;
        case ExprNode::Kind::variable: {
            auto it = b.find(n.name);
            if (it == b.end()) throw EvalError("unbound variable '" + n.name + "'");
            return it->second;
        }
        case ExprNode::Kind::unary: {
            const double u = eval_node(n.lhs, b);
            switch (n.uop) {
                case UnaryOp::neg: return -u;
                case UnaryOp::exp: return std::exp(u);
                case UnaryOp::log:
                    if (!(u > 0.0)) domain_error("log of non-positive value", e);
                    return std::log(u);
                case UnaryOp::sqrt:
                    if (!(u >= 0.0)) domain_error("sqrt of negative value", e);
                    return std::sqrt(u);
                case UnaryOp::abs: return std::fabs(u);
                case UnaryOp::sign: return u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
                case UnaryOp::atan: return std::atan(u);
            }
            break;
        }
        case ExprNode::Kind::binary: {
            const double u = eval_node(n.lhs, b);
            const double v = eval_node(n.rhs, b);
            double r = 0.0;
            switch (n.bop) {
                case BinaryOp::add: r = u + v; break;
                case BinaryOp::sub: r = u - v; break;
                case BinaryOp::mul: r = u * v; break;
                case BinaryOp::div:
                    if (v == 0.0) domain_error("division by zero", e);
                    r = u / v;
                    break;
                case BinaryOp::pow:
                    if (u == 0.0 && v < 0.0) domain_error("zero raised to a negative power", e);
                    if (u < 0.0 && !is_integer(v)) domain_error("negative base with non-integer exponent", e);
                    r = std::pow(u, v);
                    break;
            }
            if (std::isnan(r)) domain_error("undefined result", e);
            return r;
        }
    }
    return 0.0;
}

}  // namespace

double evaluate(const Expr& e, const Bindings& bindings) {
    const double r = eval_node(e, bindings);
    if (!std::isfinite(r)) throw EvalError("non-finite result of '" + to_string(e) + "'");
    return r;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Binding strength: sums 1, products 2, unary minus 3, powers 4, atoms 5.
int precedence(const Expr& e) {
    const auto& n = e.node();
    switch (n.kind) {
        case ExprNode::Kind::constant:
            return (n.name.empty() && (n.value < 0.0 || std::signbit(n.value))) ? 3 : 5;
        case ExprNode::Kind::variable: return 5;
        case ExprNode::Kind::unary: return n.uop == UnaryOp::neg ? 3 : 5;
        case ExprNode::Kind::binary:
            switch (n.bop) {
                case BinaryOp::add:
                case BinaryOp::sub: return 1;
                case BinaryOp::mul:
                case BinaryOp::div: return 2;
                case BinaryOp::pow: return 4;
            }
    }
    return 5;
}

std::string_view function_name(UnaryOp op) {
    for (const auto& f : kFunctions)
        if (f.op == op) return f.name;
    return "?";
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool wrap, std::string& out) {
    if (wrap) out += '(';
    print(e, out);
    if (wrap) out += ')';
}

void print(const Expr& e, std::string& out) {
    const auto& n = e.node();
    switch (n.kind) {
        case ExprNode::Kind::constant: {
            if (!n.name.empty()) {
                out += n.name;
                return;
            }
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            out += buf;
            return;
        }
        case ExprNode::Kind::variable: out += n.name; return;
        case ExprNode::Kind::unary:
            if (n.uop == UnaryOp::neg) {
                out += '-';
                print_wrapped(n.lhs, precedence(n.lhs) < 4, out);
            } else {
                out += function_name(n.uop);
                out += '(';
                print(n.lhs, out);
                out += ')';
            }
            return;
        case ExprNode::Kind::binary: {
            const int p = precedence(e);
            const int pl = precedence(n.lhs);
            const int pr = precedence(n.rhs);
            static constexpr std::string_view symbols[] = {"+", "-", "*", "/", "^"};
            if (n.bop == BinaryOp::pow) {
                print_wrapped(n.lhs, pl <= p, out);
                out += '^';
                print_wrapped(n.rhs, pr < p, out);
                return;
            }
            // A leading minus is only unambiguous as the very first operand.
            print_wrapped(n.lhs, pl < p || (pl == 3 && p != 1), out);
            out += symbols[static_cast<int>(n.bop)];
            // The parser associates to the left, so an equal-precedence right
            // operand keeps its parentheses (floating point is not associative).
            print_wrapped(n.rhs, pr <= p || pr == 3, out);
            return;
        }
    }
}

}  // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print(e, out);
    return out;
}

}  // namespace infogeo
