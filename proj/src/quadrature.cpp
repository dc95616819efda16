#include "hhverify/quadrature.hpp"

#include "hhverify/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace hhverify {

MaxSubdivisionsExceeded::MaxSubdivisionsExceeded(QuadResult best)
    : std::runtime_error("quadrature: maximum subdivisions exceeded (best estimate " + std::to_string(best.value) +
                         ", error " + std::to_string(best.error_estimate) + ")"),
      best_(best) {}

NonFiniteSample::NonFiniteSample(double x)
    : std::runtime_error("quadrature: non-finite integrand sample at x=" + std::to_string(x)), x_(x) {}

namespace {

// Kronrod abscissae (descending, last is the centre) and weights; Gauss
// 7-point weights for the odd-indexed abscissae and the centre.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo, hi;
    double value;
    double error;
    double abs_value;

    bool operator<(const Segment& o) const { return error < o.error; }
};

double sample(const std::function<double(double)>& g, double x) {
    double y = g(x);
    if (!std::isfinite(y)) throw NonFiniteSample(x);
    return y;
}

Segment gk15(const std::function<double(double)>& g, double lo, double hi) {
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = sample(g, centre);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    double abs_sum = std::fabs(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = sample(g, centre - dx);
        const double f2 = sample(g, centre + dx);
        kronrod += kWgk[j] * (f1 + f2);
        abs_sum += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    return {lo, hi, kronrod * half, std::fabs((kronrod - gauss) * half), abs_sum * std::fabs(half)};
}

} // namespace

QuadResult integrate(const std::function<double(double)>& g, double lo, double hi, QuadTolerance tol,
                     std::size_t max_subdivisions) {
    if (!(lo < hi)) throw PreconditionError("integrate: requires lo < hi");
    if (!(tol.abs >= 0.0 && tol.rel >= 0.0 && (tol.abs > 0.0 || tol.rel > 0.0)))
        throw PreconditionError("integrate: tolerance must be positive");

    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::priority_queue<Segment> heap;
    Segment first = gk15(g, lo, hi);
    double value = first.value;
    double error = first.error;
    double abs_value = first.abs_value;
    heap.push(first);
    std::size_t subdivisions = 1;

    auto target = [&] { return std::max({tol.abs, tol.rel * std::fabs(value), 50.0 * eps * abs_value}); };

    while (error > target()) {
        if (subdivisions >= max_subdivisions) throw MaxSubdivisionsExceeded({value, error, subdivisions, false});
        Segment worst = heap.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(worst.lo < mid && mid < worst.hi)) {
            // Interval is below floating-point resolution; nothing left to gain.
            throw MaxSubdivisionsExceeded({value, error, subdivisions, false});
        }
        heap.pop();
        Segment left = gk15(g, worst.lo, mid);
        Segment right = gk15(g, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_value += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
        if (error < 0.0) error = 0.0;
    }

    // Re-sum from the segments to shed drift from the running updates.
    double v = 0.0, e = 0.0;
    std::vector<Segment> segs;
    segs.reserve(heap.size());
    while (!heap.empty()) {
        segs.push_back(heap.top());
        heap.pop();
    }
    std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
    for (const Segment& s : segs) {
        v += s.value;
        e += s.error;
    }
    return {v, e, subdivisions, true};
}

QuadResult integrate(const std::function<double(double)>& g, double lo, double hi, double tol) {
    if (!(tol > 0.0)) throw PreconditionError("integrate: tolerance must be positive");
    return integrate(g, lo, hi, QuadTolerance{tol, tol});
}

QuadResult integrate_split(const std::function<double(double)>& g, double lo, double mid, double hi,
                           QuadTolerance tol) {
    if (!(lo < mid && mid < hi)) throw PreconditionError("integrate_split: requires lo < mid < hi");
    QuadTolerance half{tol.abs * 0.5, tol.rel};
    QuadResult l = integrate(g, lo, mid, half);
    QuadResult r = integrate(g, mid, hi, half);
    return {l.value + r.value, l.error_estimate + r.error_estimate, l.subdivisions + r.subdivisions, true};
}

double mean_integral(const FunctionModel& m, double a, double b, double tol) {
    if (!(a < b)) throw PreconditionError("mean_integral: requires a < b");
    if (!m.domain().contains(Interval{a, b}))
        throw PreconditionError("mean_integral: [a,b] must lie inside the model domain");
    QuadResult r = integrate([&m](double x) { return m.f(x); }, a, b, tol);
    return r.value / (b - a);
}

} // namespace hhverify
