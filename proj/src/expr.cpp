#include "hhverify/expr.hpp"

#include "hhverify/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

namespace hhverify {

struct Expr::Node {
    ExprKind kind;
    double value = 0.0;
    std::vector<Expr> children;
    bool has_x = false;
};

ParseError::ParseError(std::size_t offset, std::string message, std::string expected)
    : std::runtime_error("parse error at offset " + std::to_string(offset) + ": " + message +
                         (expected.empty() ? "" : " (expected " + expected + ")")),
      offset_(offset),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

DomainError::DomainError(double x, std::string reason)
    : std::runtime_error("domain error at x=" + std::to_string(x) + ": " + reason),
      x_(x),
      reason_(std::move(reason)) {}

namespace {

std::size_t kind_arity(ExprKind k) {
    switch (k) {
    case ExprKind::Constant:
    case ExprKind::Variable:
        return 0;
    case ExprKind::Exp:
    case ExprKind::Ln:
    case ExprKind::Neg:
        return 1;
    default:
        return 2;
    }
}

} // namespace

Expr Expr::constant(double value) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Constant;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::variable() {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Variable;
    n->has_x = true;
    return Expr(std::move(n));
}

Expr Expr::unary(ExprKind kind, Expr child) {
    if (kind_arity(kind) != 1) throw PreconditionError("Expr::unary: kind is not unary");
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->has_x = child.depends_on_x();
    n->children.push_back(std::move(child));
    return Expr(std::move(n));
}

Expr Expr::binary(ExprKind kind, Expr lhs, Expr rhs) {
    if (kind_arity(kind) != 2) throw PreconditionError("Expr::binary: kind is not binary");
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->has_x = lhs.depends_on_x() || rhs.depends_on_x();
    n->children.push_back(std::move(lhs));
    n->children.push_back(std::move(rhs));
    return Expr(std::move(n));
}

ExprKind Expr::kind() const noexcept { return node_->kind; }
double Expr::value() const noexcept { return node_->value; }
std::size_t Expr::arity() const noexcept { return node_->children.size(); }
const Expr& Expr::child(std::size_t i) const { return node_->children.at(i); }
bool Expr::depends_on_x() const noexcept { return node_->has_x; }

bool operator==(const Expr& lhs, const Expr& rhs) {
    if (lhs.node_ == rhs.node_) return true;
    if (lhs.kind() != rhs.kind() || lhs.arity() != rhs.arity()) return false;
    if (lhs.kind() == ExprKind::Constant) return lhs.value() == rhs.value();
    for (std::size_t i = 0; i < lhs.arity(); ++i)
        if (!(lhs.child(i) == rhs.child(i))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Expr run() {
        if (src_.find_first_not_of(" \t\r\n") == std::string_view::npos)
            throw ParseError(0, "empty expression", "an expression");
        Expr e = sum();
        skip_ws();
        if (pos_ < src_.size()) fail("unexpected trailing input", "end of input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg, const std::string& expected) const {
        std::size_t off = pos_ < src_.size() ? pos_ : src_.size() - 1;
        throw ParseError(off, msg, expected);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= src_.size()) fail(std::string("unbalanced parenthesis or missing '") + c + "'", std::string("'") + c + "'");
            fail(std::string("unexpected character '") + src_[pos_] + "'", std::string("'") + c + "'");
        }
    }

    Expr sum() {
        Expr lhs = product();
        for (;;) {
            if (accept('+'))
                lhs = Expr::binary(ExprKind::Add, lhs, product());
            else if (accept('-'))
                lhs = Expr::binary(ExprKind::Sub, lhs, product());
            else
                return lhs;
        }
    }

    Expr product() {
        Expr lhs = unary();
        for (;;) {
            if (accept('*'))
                lhs = Expr::binary(ExprKind::Mul, lhs, unary());
            else if (accept('/'))
                lhs = Expr::binary(ExprKind::Div, lhs, unary());
            else
                return lhs;
        }
    }

    Expr unary() {
        if (accept('-')) return Expr::unary(ExprKind::Neg, unary());
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (accept('^')) return Expr::binary(ExprKind::Pow, base, unary());
        return base;
    }

    Expr primary() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input", "a number, 'x', function or '('");
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == '(') {
            ++pos_;
            Expr inner = sum();
            expect(')');
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            std::string_view ident = src_.substr(start, pos_ - start);
            if (ident == "x") return Expr::variable();
            if (ident == "exp" || ident == "ln") {
                expect('(');
                Expr arg = sum();
                expect(')');
                return Expr::unary(ident == "exp" ? ExprKind::Exp : ExprKind::Ln, arg);
            }
            pos_ = start;
            fail("unknown identifier '" + std::string(ident) + "'", "'x', 'exp' or 'ln'");
        }
        fail(std::string("unexpected character '") + c + "'", "a number, 'x', function or '('");
    }

    Expr number() {
        std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t nd = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            nd += digits();
        }
        if (nd == 0) {
            pos_ = start;
            fail("malformed number", "digits");
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (digits() == 0) pos_ = mark; // not an exponent
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
        if (ec != std::errc() || ptr != src_.data() + pos_ || !std::isfinite(v)) {
            pos_ = start;
            fail("number out of range", "a finite number");
        }
        return Expr::constant(v);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

} // namespace

Expr parse(std::string_view src) { return Parser(src).run(); }

// ---------------------------------------------------------------------------
// Differentiation

namespace {

bool is_const(const Expr& e, double v) { return e.kind() == ExprKind::Constant && e.value() == v; }

Expr add(Expr a, Expr b) {
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    return Expr::binary(ExprKind::Add, std::move(a), std::move(b));
}

Expr sub(Expr a, Expr b) {
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return Expr::unary(ExprKind::Neg, std::move(b));
    return Expr::binary(ExprKind::Sub, std::move(a), std::move(b));
}

Expr mul(Expr a, Expr b) {
    if (is_const(a, 0.0) || is_const(b, 0.0)) return Expr::constant(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    return Expr::binary(ExprKind::Mul, std::move(a), std::move(b));
}

Expr div(Expr a, Expr b) {
    if (is_const(a, 0.0)) return Expr::constant(0.0);
    if (is_const(b, 1.0)) return a;
    return Expr::binary(ExprKind::Div, std::move(a), std::move(b));
}

} // namespace

Expr differentiate(const Expr& e) {
    if (!e.depends_on_x()) return Expr::constant(0.0);
    switch (e.kind()) {
    case ExprKind::Variable:
        return Expr::constant(1.0);
    case ExprKind::Add:
        return add(differentiate(e.child(0)), differentiate(e.child(1)));
    case ExprKind::Sub:
        return sub(differentiate(e.child(0)), differentiate(e.child(1)));
    case ExprKind::Neg:
        return Expr::unary(ExprKind::Neg, differentiate(e.child(0)));
    case ExprKind::Mul: {
        const Expr& u = e.child(0);
        const Expr& v = e.child(1);
        return add(mul(differentiate(u), v), mul(u, differentiate(v)));
    }
    case ExprKind::Div: {
        const Expr& u = e.child(0);
        const Expr& v = e.child(1);
        if (!v.depends_on_x()) return div(differentiate(u), v);
        Expr num = sub(mul(differentiate(u), v), mul(u, differentiate(v)));
        return div(num, Expr::binary(ExprKind::Mul, v, v));
    }
    case ExprKind::Exp:
        return mul(e, differentiate(e.child(0)));
    case ExprKind::Ln:
        return div(differentiate(e.child(0)), e.child(0));
    case ExprKind::Pow: {
        const Expr& base = e.child(0);
        const Expr& expo = e.child(1);
        if (!expo.depends_on_x()) {
            Expr reduced = expo.kind() == ExprKind::Constant
                               ? Expr::constant(expo.value() - 1.0)
                               : Expr::binary(ExprKind::Sub, expo, Expr::constant(1.0));
            return mul(mul(expo, Expr::binary(ExprKind::Pow, base, reduced)), differentiate(base));
        }
        Expr rewritten =
            Expr::unary(ExprKind::Exp, Expr::binary(ExprKind::Mul, expo, Expr::unary(ExprKind::Ln, base)));
        return differentiate(rewritten);
    }
    case ExprKind::Constant:
        break;
    }
    return Expr::constant(0.0);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double checked(double v, double x, const char* what) {
    if (!std::isfinite(v)) throw DomainError(x, std::string("non-finite result in ") + what);
    return v;
}

double eval_at(const Expr& e, double x) {
    switch (e.kind()) {
    case ExprKind::Constant:
        return e.value();
    case ExprKind::Variable:
        return x;
    case ExprKind::Add:
        return checked(eval_at(e.child(0), x) + eval_at(e.child(1), x), x, "addition");
    case ExprKind::Sub:
        return checked(eval_at(e.child(0), x) - eval_at(e.child(1), x), x, "subtraction");
    case ExprKind::Mul:
        return checked(eval_at(e.child(0), x) * eval_at(e.child(1), x), x, "multiplication");
    case ExprKind::Div: {
        double den = eval_at(e.child(1), x);
        if (den == 0.0) throw DomainError(x, "division by zero");
        return checked(eval_at(e.child(0), x) / den, x, "division");
    }
    case ExprKind::Neg:
        return -eval_at(e.child(0), x);
    case ExprKind::Exp:
        return checked(std::exp(eval_at(e.child(0), x)), x, "exp");
    case ExprKind::Ln: {
        double arg = eval_at(e.child(0), x);
        if (arg <= 0.0) throw DomainError(x, "ln of nonpositive argument");
        return std::log(arg);
    }
    case ExprKind::Pow: {
        double base = eval_at(e.child(0), x);
        double expo = eval_at(e.child(1), x);
        if (base < 0.0 && std::trunc(expo) != expo)
            throw DomainError(x, "negative base raised to non-integer power");
        if (base == 0.0 && expo < 0.0) throw DomainError(x, "zero raised to negative power");
        return checked(std::pow(base, expo), x, "power");
    }
    }
    throw DomainError(x, "malformed expression");
}

} // namespace

double evaluate(const Expr& e, double x) {
    if (!std::isfinite(x)) throw DomainError(x, "non-finite argument");
    return eval_at(e, x);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Binding strength of the grammar level that produces each node.
int level(const Expr& e) {
    switch (e.kind()) {
    case ExprKind::Add:
    case ExprKind::Sub:
        return 1;
    case ExprKind::Mul:
    case ExprKind::Div:
        return 2;
    case ExprKind::Neg:
        return 3;
    case ExprKind::Pow:
        return 4;
    case ExprKind::Constant:
        return e.value() < 0.0 || std::signbit(e.value()) ? 3 : 5;
    default:
        return 5;
    }
}

void print(const Expr& e, int min_level, std::string& out);

void print_child(const Expr& e, int min_level, std::string& out) {
    if (level(e) < min_level) {
        out += '(';
        print(e, 0, out);
        out += ')';
    } else {
        print(e, min_level, out);
    }
}

void print(const Expr& e, int /*min_level*/, std::string& out) {
    switch (e.kind()) {
    case ExprKind::Constant: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", std::fabs(e.value()));
        if (std::signbit(e.value())) out += '-';
        out += buf;
        return;
    }
    case ExprKind::Variable:
        out += 'x';
        return;
    case ExprKind::Add:
    case ExprKind::Sub:
        print_child(e.child(0), 1, out);
        out += e.kind() == ExprKind::Add ? " + " : " - ";
        print_child(e.child(1), 2, out);
        return;
    case ExprKind::Mul:
    case ExprKind::Div:
        print_child(e.child(0), 2, out);
        out += e.kind() == ExprKind::Mul ? " * " : " / ";
        print_child(e.child(1), 3, out);
        return;
    case ExprKind::Neg:
        out += '-';
        print_child(e.child(0), 3, out);
        return;
    case ExprKind::Pow:
        print_child(e.child(0), 5, out);
        out += '^';
        print_child(e.child(1), 3, out);
        return;
    case ExprKind::Exp:
    case ExprKind::Ln:
        out += e.kind() == ExprKind::Exp ? "exp(" : "ln(";
        print(e.child(0), 0, out);
        out += ')';
        return;
    }
}

} // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print(e, 0, out);
    return out;
}

} // namespace hhverify
