#pragma once

#include "hhverify/errors.hpp"
#include "hhverify/fnmodel.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace hhverify {

// Grid-based semi-decision procedures for the convexity classes. A `true`
// verdict only certifies that no violation larger than the slack exists on
// the (x, y, t) grid; every `false` verdict comes with concrete witnesses.

struct ClassCheckConfig {
    int grid_points = 33; // per axis, >= 3
    double slack = 1e-9;
    double s = 1.0;       // in (0, 1]
    double q = 1.0;       // >= 1, exponent applied to |f'|
};

/// One violated instance of a class inequality lhs <= rhs.
struct Witness {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct ClassCheck {
    bool ok = true;
    std::size_t checked = 0;
    std::vector<Witness> witnesses; // in grid-index order
};

class NegativeValue : public PreconditionError {
public:
    NegativeValue(double x, double gx);
    double x() const noexcept { return x_; }

private:
    double x_;
};

class NonPositiveValue : public PreconditionError {
public:
    NonPositiveValue(double x, double gx);
    double x() const noexcept { return x_; }

private:
    double x_;
};

/// g(tx + (1-t)y) <= t g(x) + (1-t) g(y)
ClassCheck is_convex(const RealFn& g, const Interval& iv, const ClassCheckConfig& cfg = {});

/// g(tx + (1-t)y) <= t^s g(x) + (1-t)^s g(y), g >= 0
ClassCheck is_s_convex(const RealFn& g, const Interval& iv, double s, const ClassCheckConfig& cfg = {});

/// g(x^t y^(1-t)) <= g(x)^t g(y)^(1-t), g > 0
ClassCheck is_geometrically_convex(const RealFn& g, const Interval& iv, const ClassCheckConfig& cfg = {});

/// g(x^t y^(1-t)) <= g(x)^(t^s) g(y)^((1-t)^s), g > 0
ClassCheck is_s_geometrically_convex(const RealFn& g, const Interval& iv, double s,
                                     const ClassCheckConfig& cfg = {});

/// g(x_{i+1}) <= g(x_i) + slack on the sorted grid. Witnesses carry
/// x = x_i, y = x_{i+1}, lhs = g(x_{i+1}), rhs = g(x_i).
ClassCheck is_monotone_decreasing(const RealFn& g, const Interval& iv, const ClassCheckConfig& cfg = {});

/// mu^(alpha^s) <= mu^(alpha s) for mu, alpha, s in (0, 1].
bool check_pointwise_key(double mu, double alpha, double s);

/// Tri-state hypothesis flag; NotApplicable marks a hypothesis the theorem
/// in question does not carry.
enum class Flag { False, True, NotApplicable };

const char* to_string(Flag f);

struct HypothesisReport {
    bool class_ok = false;
    bool monotone_decreasing_ok = false;
    bool fprime_a_le_1 = false;
    double fprime_a_abs = 0.0;
    std::vector<Witness> class_witnesses;
    std::vector<Witness> monotone_witnesses;
    std::string note; // set when the class check could not run (e.g. |f'| vanishes)
    double a = 0.0, b = 0.0, s = 1.0, q = 1.0;

    bool all_ok() const noexcept { return class_ok && monotone_decreasing_ok && fprime_a_le_1; }
};

/// Preconditions of the s-geometric bounds: |f'|^q s-geometrically convex,
/// |f'| decreasing, |f'(a)| <= 1 + slack, all on [a, b].
HypothesisReport theorem_hypotheses(const FunctionModel& m, double a, double b, double s, double q,
                                    const ClassCheckConfig& cfg = {});

/// Precondition of the classical bounds: |f'|^r convex on [a, b].
ClassCheck classical_hypothesis(const FunctionModel& m, double a, double b, double r,
                                const ClassCheckConfig& cfg = {});

} // namespace hhverify
