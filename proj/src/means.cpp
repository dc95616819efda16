#include "hhverify/means.hpp"

#include "hhverify/bounds.hpp"
#include "hhverify/errors.hpp"
#include "hhverify/fnmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hhverify {

namespace {

constexpr double kSameTol = 1e-12;

void check_positive(double a, double b) {
    if (!(a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b)))
        throw PreconditionError("means require finite a, b > 0");
}

bool same(double a, double b) { return std::fabs(b - a) <= kSameTol * std::min(a, b); }

void check_prop_range(double a, double b, double s) {
    if (!(a > 0.0 && a <= b && b <= 1.0)) throw OutOfRange("proposition requires 0 < a <= b <= 1");
    if (!(s > 0.0 && s < 1.0)) throw OutOfRange("proposition requires 0 < s < 1");
}

void check_q(double q, bool strict) {
    if (strict ? !(q > 1.0) : !(q >= 1.0)) throw OutOfRange(strict ? "requires q > 1" : "requires q >= 1");
}

// (b^(p+1) - a^(p+1))/((p+1)(b-a)) for a < b, in the log domain.
double log_power_difference_quotient(double a, double b, double p) {
    const double e = p + 1.0;
    const double x = e * std::log(a / b);
    return e * std::log(b) + std::log(-std::expm1(x) / e) - std::log(b - a);
}

IdentityCheck classify(double lhs, double rhs, double tol) {
    IdentityCheck c;
    c.lhs = lhs;
    c.rhs = rhs;
    c.residual = std::fabs(lhs - rhs);
    c.deviation = c.residual / std::max(1.0, std::fabs(lhs));
    const bool ok = std::isfinite(c.residual) && c.deviation <= tol;
    c.status = ok ? IdentityStatus::Consistent : IdentityStatus::Discrepant;
    return c;
}

// x^k in the log domain.
double pw(double x, double k) { return std::exp(k * std::log(x)); }

double alpha_sq(double a, double b, double s, double q) {
    return alpha({pw(a, s - 1.0), pw(b, s - 1.0), s * q, s * q});
}

} // namespace

double mean_A(double a, double b) {
    check_positive(a, b);
    return 0.5 * (a + b);
}

double mean_L(double a, double b) {
    check_positive(a, b);
    if (same(a, b)) return a;
    if (a > b) std::swap(a, b);
    return (b - a) / std::log1p((b - a) / a);
}

double mean_Lp(double a, double b, double p) {
    check_positive(a, b);
    if (std::fabs(p) <= 1e-9 || std::fabs(p + 1.0) <= 1e-9)
        throw UnsupportedExponent("generalized logarithmic mean undefined for p in {-1, 0}");
    if (same(a, b)) return a;
    if (a > b) std::swap(a, b);
    return std::exp(log_power_difference_quotient(a, b, p) / p);
}

MeanValue mean(MeanKind kind, double a, double b, double p) {
    MeanValue m;
    m.kind = kind;
    m.a = a;
    m.b = b;
    m.p = p;
    switch (kind) {
    case MeanKind::Arithmetic:
        m.value = mean_A(a, b);
        break;
    case MeanKind::Logarithmic:
        m.value = mean_L(a, b);
        break;
    case MeanKind::GeneralizedLog:
        m.value = mean_Lp(a, b, p);
        break;
    }
    return m;
}

double prop_lhs(double a, double b, double s) {
    check_prop_range(a, b, s);
    if (same(a, b)) return 0.0;
    // [L_s(a,b)]^s is the power-difference quotient itself.
    const double ls_pow_s = std::exp(log_power_difference_quotient(a, b, s));
    return std::fabs(mean_A(pw(a, s), pw(b, s)) - ls_pow_s);
}

const char* to_string(IdentityStatus s) { return s == IdentityStatus::Consistent ? "consistent" : "discrepant"; }

IdentityCheck identity_aa_check(double a, double b, double s, double tol) {
    check_prop_range(a, b, s);
    if (same(a, b)) return classify(0.0, 0.0, tol);
    const FunctionModel m = make_power_model(s, {a, b});
    return classify(hh_lhs(m, a, b, 1e-14), prop_lhs(a, b, s) / s, tol);
}

IdentityCheck identity_bb_check(double a, double b, double s, double tol) {
    check_prop_range(a, b, s);
    const double k = s * (s - 1.0);
    const double bk = pw(b, k);
    if (same(a, b)) return classify(0.5 * bk, 0.5 * bk * bk * bk, tol);
    const double ak = pw(a, k);
    const double l = mean_L(ak, bk);
    const FunctionModel m = make_power_model(s, {a, b});
    return classify(G1(m, a, b, s), bk * l * (mean_A(ak, bk) - 0.5 * l), tol);
}

IdentityCheck identity_cc_check(double a, double b, double s, double q, double tol) {
    check_prop_range(a, b, s);
    check_q(q, false);
    if (same(a, b)) return classify(1.0, 1.0, tol);
    const double k = s * q * (s - 1.0);
    const double bk = pw(b, k);
    return classify(g3(alpha_sq(a, b, s, q)).value, mean_L(pw(a, k), bk) / bk, tol);
}

double compute_U(double a, double b, double s, double q) {
    check_prop_range(a, b, s);
    check_q(q, false);
    if (same(a, b)) return 0.25;
    const double k = s * q * (s - 1.0);
    const double h = 0.5 * k;
    const double log_diff = k * (std::log(a) - std::log(b));
    const double bh = pw(b, h);
    return (mean_L(pw(a, h), bh) / bh - 1.0) / log_diff;
}

double compute_V(double a, double b, double s, double q) {
    check_prop_range(a, b, s);
    check_q(q, false);
    if (same(a, b)) return -std::numeric_limits<double>::infinity();
    const double k = s * q * (s - 1.0);
    const double ratio = pw(a / b, k);     // (a/b)^(sq(s-1))
    const double ratio2 = pw(a / b, 2.0 * k); // (a/b)^(2qs(s-1))
    const double log_diff = k * (std::log(a) - std::log(b));
    const double half_log_diff = 0.5 * log_diff;
    return ratio2 / log_diff * (1.0 - (ratio + 1.0) / (ratio * half_log_diff));
}

IdentityCheck check_U(double a, double b, double s, double q, double tol) {
    const double u = compute_U(a, b, s, q);
    const double ref = same(a, b) ? 0.25 : g1(alpha_sq(a, b, s, q)).value;
    return classify(ref, u, tol);
}

IdentityCheck check_V(double a, double b, double s, double q, double tol) {
    const double v = compute_V(a, b, s, q);
    const double ref = same(a, b) ? 0.25 : g2(alpha_sq(a, b, s, q)).value;
    return classify(ref, v, tol);
}

double prop_rhs_41(double a, double b, double s) {
    check_prop_range(a, b, s);
    if (same(a, b)) return 0.0;
    const double k = s * (s - 1.0);
    const double ak = pw(a, k), bk = pw(b, k);
    const double l = mean_L(ak, bk);
    return (b - a) * s * bk / 2.0 * l * (mean_A(ak, bk) - 0.5 * l);
}

double prop_rhs_32(double a, double b, double s, double q) {
    check_prop_range(a, b, s);
    check_q(q, true);
    if (same(a, b)) return 0.0;
    const double p = conjugate_exponent(q);
    const double k = s * q * (s - 1.0);
    const double l = mean_L(pw(a, k), pw(b, k));
    return (b - a) * s * pw(b, s * q * (1.0 - s)) / (2.0 * std::pow(p + 1.0, 1.0 / p)) * std::pow(l, 1.0 / q);
}

double prop_rhs_33(double a, double b, double s, double q) {
    check_prop_range(a, b, s);
    check_q(q, false);
    if (same(a, b)) return 0.0;
    const double u = compute_U(a, b, s, q);
    const double v = compute_V(a, b, s, q);
    if (q != 1.0 && (u < 0.0 || v < 0.0))
        throw OutOfRange("prop_rhs_33: U or V is negative, fractional power undefined");
    const double k = s * (s - 1.0);
    return s * (b - a) / 2.0 * std::pow(0.25, 1.0 - 1.0 / q) * pw(b, k) *
           (std::pow(u, 1.0 / q) + std::pow(v, 1.0 / q));
}

double prop_rhs_41_bounds_path(double a, double b, double s) {
    check_prop_range(a, b, s);
    if (same(a, b)) return 0.0;
    return s * rhs_eq10(make_power_model(s, {a, b}), a, b, s);
}

double prop_rhs_32_bounds_path(double a, double b, double s, double q) {
    check_prop_range(a, b, s);
    check_q(q, true);
    if (same(a, b)) return 0.0;
    return s * rhs_eq11(make_power_model(s, {a, b}), a, b, s, q);
}

double prop_rhs_33_bounds_path(double a, double b, double s, double q) {
    check_prop_range(a, b, s);
    check_q(q, false);
    if (same(a, b)) return 0.0;
    return s * rhs_eq111(make_power_model(s, {a, b}), a, b, s, q);
}

} // namespace hhverify
