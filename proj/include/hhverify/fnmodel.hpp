#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace hhverify {

/// Closed interval [lo, hi] with 0 < lo < hi.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const noexcept { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const noexcept { return lo <= o.lo && o.hi <= hi; }
};

using RealFn = std::function<double(double)>;

/// A differentiable function with its exact first derivative on a closed
/// interval. The factories below require lo > 0; the raw constructor also
/// accepts lo == 0. Immutable once built; evaluation is reentrant.
class FunctionModel {
public:
    FunctionModel(std::string name, Interval domain, RealFn f, RealFn fprime);

    const std::string& name() const noexcept { return name_; }
    const Interval& domain() const noexcept { return domain_; }

    double f(double x) const { return f_(x); }
    double fprime(double x) const { return fprime_(x); }

private:
    std::string name_;
    Interval domain_;
    RealFn f_;
    RealFn fprime_;
};

/// Default number of Chebyshev probe points used to validate finiteness.
inline constexpr int kProbePoints = 64;

/// Chebyshev (first kind) nodes mapped onto [lo, hi], plus both endpoints,
/// in ascending order.
std::vector<double> chebyshev_probe(const Interval& domain, int points = kProbePoints);

/// f(x) = x^s / s on a subinterval of (0, 1]. Requires 0 < s < 1.
FunctionModel make_power_model(double s, Interval domain = {1e-3, 1.0});

/// f(x) = exp(-lambda x). Requires lambda > 0.
FunctionModel make_exp_model(double lambda, Interval domain = {0.1, 4.0});

/// f(x) = c ln x. Requires c > 0.
FunctionModel make_log_model(double c, Interval domain = {1.0, 8.0});

/// f(x) = slope x + intercept.
FunctionModel make_affine_model(double slope, double intercept, Interval domain = {0.1, 4.0});

/// Builds a model from expression text; the derivative is symbolic. Throws
/// ParseError, or DomainError naming the first probe point where f or f' is
/// not finite.
FunctionModel model_from_expr(const std::string& fsrc, Interval domain);

} // namespace hhverify
