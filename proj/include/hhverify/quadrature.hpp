#pragma once

#include "hhverify/fnmodel.hpp"

#include <cstddef>
#include <functional>
#include <stdexcept>

namespace hhverify {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t subdivisions = 0;
    bool converged = false;
};

/// Convergence target: error_estimate <= max(abs, rel * |value|).
struct QuadTolerance {
    double abs = 1e-10;
    double rel = 1e-10;
};

inline constexpr std::size_t kMaxSubdivisions = 1'000'000;
inline constexpr double kDefaultQuadTol = 1e-10;

class MaxSubdivisionsExceeded : public std::runtime_error {
public:
    explicit MaxSubdivisionsExceeded(QuadResult best);
    const QuadResult& best() const noexcept { return best_; }

private:
    QuadResult best_;
};

class NonFiniteSample : public std::runtime_error {
public:
    explicit NonFiniteSample(double x);
    double x() const noexcept { return x_; }

private:
    double x_;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration: the subinterval with
/// the largest error estimate is bisected until the summed estimate meets the
/// tolerance. Deterministic. Integrands with an interior kink must be split by
/// the caller (see integrate_split).
QuadResult integrate(const std::function<double(double)>& g, double lo, double hi, QuadTolerance tol,
                     std::size_t max_subdivisions = kMaxSubdivisions);

QuadResult integrate(const std::function<double(double)>& g, double lo, double hi, double tol = kDefaultQuadTol);

/// integrate over [lo, mid] and [mid, hi] separately and sum.
QuadResult integrate_split(const std::function<double(double)>& g, double lo, double mid, double hi,
                           QuadTolerance tol);

/// (1/(b-a)) * integral of f over [a, b].
double mean_integral(const FunctionModel& m, double a, double b, double tol = kDefaultQuadTol);

} // namespace hhverify
