#pragma once

#include <stdexcept>
#include <string>

namespace hhverify {

enum class MeanKind { Arithmetic, Logarithmic, GeneralizedLog };

struct MeanValue {
    double value = 0.0;
    MeanKind kind = MeanKind::Arithmetic;
    double a = 0.0;
    double b = 0.0;
    double p = 0.0; // only for GeneralizedLog
};

class UnsupportedExponent : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// (a + b)/2
double mean_A(double a, double b);

/// (b - a)/(ln b - ln a); returns a when |b - a| <= 1e-12 a.
double mean_L(double a, double b);

/// ((b^(p+1) - a^(p+1))/((p+1)(b-a)))^(1/p); p must stay 1e-9 away from -1 and 0.
double mean_Lp(double a, double b, double p);

MeanValue mean(MeanKind kind, double a, double b, double p = 0.0);

/// |A(a^s, b^s) - L_s(a,b)^s| for 0 < a <= b <= 1, 0 < s < 1.
double prop_lhs(double a, double b, double s);

enum class IdentityStatus { Consistent, Discrepant };

const char* to_string(IdentityStatus s);

/// Two independent evaluations of quantities claimed equal.
struct IdentityCheck {
    double lhs = 0.0;       // computed through the bounds / quadrature path
    double rhs = 0.0;       // computed through the closed mean-value form
    double residual = 0.0;  // |lhs - rhs|
    double deviation = 0.0; // residual / max(1, |lhs|)
    IdentityStatus status = IdentityStatus::Consistent;
};

/// hh_lhs of x^s/s against (1/s) prop_lhs. Exact algebra.
IdentityCheck identity_aa_check(double a, double b, double s, double tol = 1e-10);

/// G1 of x^s/s against b^k L(a^k, b^k)[A(a^k, b^k) - L(a^k, b^k)/2], k = s(s-1).
IdentityCheck identity_bb_check(double a, double b, double s, double tol = 1e-8);

/// g3(alpha(sq,sq)) against L(a^k, b^k)/b^k, k = sq(s-1).
IdentityCheck identity_cc_check(double a, double b, double s, double q, double tol = 1e-10);

/// Mean-value form claimed equal to g1(alpha(sq,sq)).
double compute_U(double a, double b, double s, double q);

/// Ratio form claimed equal to g2(alpha(sq,sq)). May be non-finite as a -> b.
double compute_V(double a, double b, double s, double q);

/// U against g1(alpha(sq,sq)).
IdentityCheck check_U(double a, double b, double s, double q, double tol = 1e-10);

/// V against g2(alpha(sq,sq)); non-finite V is classified as discrepant.
IdentityCheck check_V(double a, double b, double s, double q, double tol = 1e-10);

// Proposition right-hand sides, exactly as the mean-value forms read.
double prop_rhs_41(double a, double b, double s);
double prop_rhs_32(double a, double b, double s, double q);
double prop_rhs_33(double a, double b, double s, double q);

// The same right-hand sides obtained by applying the general bounds to
// x^s/s and multiplying by s.
double prop_rhs_41_bounds_path(double a, double b, double s);
double prop_rhs_32_bounds_path(double a, double b, double s, double q);
double prop_rhs_33_bounds_path(double a, double b, double s, double q);

} // namespace hhverify
