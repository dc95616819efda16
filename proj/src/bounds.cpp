#include "hhverify/bounds.hpp"

#include "hhverify/errors.hpp"

#include <cmath>

namespace hhverify {

namespace {

const double kLogAlphaMax = std::log(kAlphaMax);

double log_alpha_checked(double alpha) {
    if (!(alpha >= kAlphaMin && alpha <= kAlphaMax))
        throw OutOfRange("alpha outside the supported window [1e-12, 1e12]");
    return std::log(alpha);
}

void check_interval(const FunctionModel& m, double a, double b) {
    if (!(a < b)) throw PreconditionError("bound evaluation requires a < b");
    if (!m.domain().contains(Interval{a, b}))
        throw PreconditionError("bound evaluation: [a,b] must lie inside the model domain");
}

void check_s(double s) {
    if (!(s > 0.0 && s <= 1.0)) throw OutOfRange("s must lie in (0,1]");
}

struct DerivativeEnds {
    double fa, fb;
};

DerivativeEnds ends(const FunctionModel& m, double a, double b) {
    DerivativeEnds d{std::fabs(m.fprime(a)), std::fabs(m.fprime(b))};
    if (!(d.fa > 0.0 && d.fb > 0.0)) throw OutOfRange("derivative vanishes at an endpoint; alpha undefined");
    return d;
}

} // namespace

double alpha(const AlphaParams& p) {
    if (!(p.fprime_a_abs > 0.0 && p.fprime_b_abs > 0.0 && p.u > 0.0 && p.v > 0.0))
        throw PreconditionError("alpha: all parameters must be strictly positive");
    const double log_alpha = p.u * std::log(p.fprime_a_abs) - p.v * std::log(p.fprime_b_abs);
    if (!(std::fabs(log_alpha) <= kLogAlphaMax))
        throw OutOfRange("alpha outside the supported window [1e-12, 1e12]");
    return std::exp(log_alpha);
}

// Series coefficients are the moments int (weight) t^k dt / k!.
BoundValue g1(double a) {
    const double u = log_alpha_checked(a);
    if (std::fabs(u) < kSeriesSwitch)
        return {0.25 + u * (1.0 / 24 + u * (1.0 / 192 + u / 1920)), Branch::Series, a};
    return {(2.0 * std::expm1(0.5 * u) - u) / (u * u), Branch::ClosedForm, a};
}

BoundValue g2(double a) {
    const double u = log_alpha_checked(a);
    if (std::fabs(u) < kSeriesSwitch)
        return {0.25 + u * (5.0 / 24 + u * (17.0 / 192 + u * 49.0 / 1920)), Branch::Series, a};
    // (2 sqrt(a) - 2a + a ln a)/u^2 = sqrt(a) (sqrt(a) u - 2 (sqrt(a) - 1))/u^2
    const double root = std::exp(0.5 * u);
    return {root * (root * u - 2.0 * std::expm1(0.5 * u)) / (u * u), Branch::ClosedForm, a};
}

BoundValue g3(double a) {
    const double u = log_alpha_checked(a);
    if (std::fabs(u) < kSeriesSwitch) return {1.0 + u * (0.5 + u * (1.0 / 6 + u / 24)), Branch::Series, a};
    return {std::expm1(u) / u, Branch::ClosedForm, a};
}

double trapezoid_gap(const FunctionModel& m, double a, double b, double tol) {
    check_interval(m, a, b);
    return 0.5 * (m.f(a) + m.f(b)) - mean_integral(m, a, b, tol);
}

double hh_lhs(const FunctionModel& m, double a, double b, double tol) { return std::fabs(trapezoid_gap(m, a, b, tol)); }

double lemma1_rhs(const FunctionModel& m, double a, double b, double tol) {
    check_interval(m, a, b);
    auto integrand = [&m, a, b](double t) { return (1.0 - 2.0 * t) * m.fprime(t * a + (1.0 - t) * b); };
    QuadResult r = integrate_split(integrand, 0.0, 0.5, 1.0, QuadTolerance{tol, tol});
    return 0.5 * (b - a) * r.value;
}

double G1(const FunctionModel& m, double a, double b, double s) {
    check_interval(m, a, b);
    check_s(s);
    const auto [fa, fb] = ends(m, a, b);
    const double al = alpha({fa, fb, s, s});
    return std::pow(fb, s) * (g1(al).value + g2(al).value);
}

double G2(const FunctionModel& m, double a, double b, double s, double q) {
    check_interval(m, a, b);
    check_s(s);
    if (!(q > 1.0)) throw OutOfRange("G2 requires q > 1");
    const auto [fa, fb] = ends(m, a, b);
    const double al = alpha({fa, fb, s * q, s * q});
    return std::pow(fb, s) * std::pow(g3(al).value, 1.0 / q);
}

double G3(const FunctionModel& m, double a, double b, double s, double q) {
    check_interval(m, a, b);
    check_s(s);
    if (!(q >= 1.0)) throw OutOfRange("G3 requires q >= 1");
    const auto [fa, fb] = ends(m, a, b);
    const double al = alpha({fa, fb, s * q, s * q});
    return std::pow(fb, s) * (std::pow(g1(al).value, 1.0 / q) + std::pow(g2(al).value, 1.0 / q));
}

double conjugate_exponent(double q) {
    if (!(q > 1.0)) throw OutOfRange("conjugate exponent requires q > 1");
    return q / (q - 1.0);
}

double rhs_eq10(const FunctionModel& m, double a, double b, double s) { return 0.5 * (b - a) * G1(m, a, b, s); }

double rhs_eq11(const FunctionModel& m, double a, double b, double s, double q) {
    const double p = conjugate_exponent(q);
    return (b - a) / (2.0 * std::pow(p + 1.0, 1.0 / p)) * G2(m, a, b, s, q);
}

double rhs_eq111(const FunctionModel& m, double a, double b, double s, double q) {
    const double g = G3(m, a, b, s, q);
    return 0.5 * (b - a) * std::pow(0.25, 1.0 - 1.0 / q) * g;
}

double classical_bound_8(const FunctionModel& m, double a, double b) {
    check_interval(m, a, b);
    return (b - a) * (std::fabs(m.fprime(a)) + std::fabs(m.fprime(b))) / 8.0;
}

double classical_bound_9(const FunctionModel& m, double a, double b, double p) {
    check_interval(m, a, b);
    if (!(p > 1.0)) throw OutOfRange("classical bound 9 requires p > 1");
    const double r = p / (p - 1.0);
    const double avg = 0.5 * (std::pow(std::fabs(m.fprime(a)), r) + std::pow(std::fabs(m.fprime(b)), r));
    return (b - a) / (2.0 * std::pow(p + 1.0, 1.0 / p)) * std::pow(avg, 1.0 / r);
}

} // namespace hhverify
