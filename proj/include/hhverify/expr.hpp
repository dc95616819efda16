#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hhverify {

// Expression trees over a single variable x.
//
// Grammar (lowest to highest precedence):
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | 'x' | 'exp' '(' sum ')' | 'ln' '(' sum ')' | '(' sum ')'

enum class ExprKind { Constant, Variable, Add, Sub, Mul, Div, Pow, Exp, Ln, Neg };

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::string message, std::string expected);

    std::size_t offset() const noexcept { return offset_; }
    const std::string& message() const noexcept { return message_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::string message_;
    std::string expected_;
};

/// Immutable expression node handle. Copies share structure.
class Expr {
public:
    static Expr constant(double value);
    static Expr variable();
    static Expr unary(ExprKind kind, Expr child);
    static Expr binary(ExprKind kind, Expr lhs, Expr rhs);

    ExprKind kind() const noexcept;
    double value() const noexcept; // only meaningful for Constant
    std::size_t arity() const noexcept;
    const Expr& child(std::size_t i) const;

    bool depends_on_x() const noexcept;

    /// Structural equality (constants compared exactly).
    friend bool operator==(const Expr& lhs, const Expr& rhs);

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

Expr parse(std::string_view src);

/// d/dx by sum, product, quotient and chain rules. An exponent that depends
/// on x is rewritten as exp(b*ln(a)) first.
Expr differentiate(const Expr& e);

/// Throws DomainError instead of ever returning a non-finite value.
double evaluate(const Expr& e, double x);

/// Precedence-aware printer; parse(to_string(e)) reproduces e for parsed trees.
std::string to_string(const Expr& e);

} // namespace hhverify
