#pragma once

#include <stdexcept>
#include <string>

namespace hhverify {

/// Evaluation of a function left its domain (ln of a nonpositive number,
/// division by zero, overflow, ...).
class DomainError : public std::runtime_error {
public:
    DomainError(double x, std::string reason);

    double x() const noexcept { return x_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    double x_;
    std::string reason_;
};

/// A parameter is outside the range an operation supports.
class OutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Violated operation precondition (a >= b, bad grid size, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace hhverify
