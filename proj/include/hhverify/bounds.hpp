#pragma once

#include "hhverify/fnmodel.hpp"
#include "hhverify/quadrature.hpp"

namespace hhverify {

/// Supported window for the derivative ratio alpha.
inline constexpr double kAlphaMin = 1e-12;
inline constexpr double kAlphaMax = 1e12;

/// Below this |ln alpha| the g-functions use their Taylor series in ln alpha.
inline constexpr double kSeriesSwitch = 1e-3;

struct AlphaParams {
    double fprime_a_abs = 1.0;
    double fprime_b_abs = 1.0;
    double u = 1.0;
    double v = 1.0;
};

enum class Branch { Series, ClosedForm };

struct BoundValue {
    double value = 0.0;
    Branch branch = Branch::ClosedForm;
    double alpha_used = 1.0;
};

/// |f'(a)|^u |f'(b)|^(-v), evaluated in the log domain.
double alpha(const AlphaParams& p);

// Weighted integrals of alpha^t:
//   g1 = int_0^{1/2} (1-2t) alpha^t dt
//   g2 = int_{1/2}^1 (2t-1) alpha^t dt
//   g3 = int_0^1 alpha^t dt
// with the removable singularity at alpha = 1 handled by the series branch.
BoundValue g1(double alpha);
BoundValue g2(double alpha);
BoundValue g3(double alpha);

/// (f(a)+f(b))/2 - mean of f over [a,b], signed.
double trapezoid_gap(const FunctionModel& m, double a, double b, double tol = kDefaultQuadTol);

/// |trapezoid_gap|.
double hh_lhs(const FunctionModel& m, double a, double b, double tol = kDefaultQuadTol);

/// Signed (b-a)/2 * int_0^1 (1-2t) f'(ta + (1-t)b) dt.
double lemma1_rhs(const FunctionModel& m, double a, double b, double tol = kDefaultQuadTol);

// Composite bounds. The |f'(a)| <= 1 side condition is not enforced here.
double G1(const FunctionModel& m, double a, double b, double s);
double G2(const FunctionModel& m, double a, double b, double s, double q);
double G3(const FunctionModel& m, double a, double b, double s, double q);

/// Hoelder conjugate p of q, 1/p + 1/q = 1. Requires q > 1.
double conjugate_exponent(double q);

// Full right-hand sides including the (b-a) prefactors.
double rhs_eq10(const FunctionModel& m, double a, double b, double s);
double rhs_eq11(const FunctionModel& m, double a, double b, double s, double q);
double rhs_eq111(const FunctionModel& m, double a, double b, double s, double q);

/// (b-a)(|f'(a)| + |f'(b)|)/8
double classical_bound_8(const FunctionModel& m, double a, double b);

/// (b-a)/(2(p+1)^(1/p)) * ((|f'(a)|^r + |f'(b)|^r)/2)^(1/r), r = p/(p-1).
double classical_bound_9(const FunctionModel& m, double a, double b, double p);

} // namespace hhverify
