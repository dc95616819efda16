#include "hhverify/harness.hpp"

#include "hhverify/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace hhverify {

namespace {

constexpr double kViolationMargin = 1e-9;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Parameter vector (a, b, s, q).
using Point = std::array<double, 4>;

std::array<bool, 4> active_dims(Theorem t) {
    switch (t) {
    case Theorem::Eq8:
        return {true, true, false, false};
    case Theorem::Eq9:
        return {true, true, false, true};
    case Theorem::Eq10:
        return {true, true, true, false};
    case Theorem::Eq11:
    case Theorem::Eq111:
        return {true, true, true, true};
    default:
        throw PreconditionError("tightness search supports eq8, eq9, eq10, eq11, eq111 only");
    }
}

void check_range(const Range& r, const char* name) {
    if (!(std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo <= r.hi))
        throw PreconditionError(std::string("tightness box: invalid range for ") + name);
}

struct Search {
    const FunctionModel& model;
    const std::string& id;
    Theorem theorem;
    const TightnessOptions& opts;
    TightnessResult& out;
    std::array<bool, 4> active;
    double best = -1.0;
    Point best_point{};

    // Returns the objective, or -1 for infeasible points.
    double eval(const Point& p) {
        ++out.trace_length;
        if (!(p[0] < p[1])) return -1.0;
        if (!model.domain().contains(Interval{p[0], p[1]})) return -1.0;
        const double s = active[2] ? p[2] : kNaN;
        const double q = active[3] ? p[3] : kNaN;
        BoundRecord r = evaluate_record(model, id, theorem, p[0], p[1], s, q, opts.settings);
        if (r.verdict == Verdict::Violation || (r.verdict == Verdict::Pass && r.ratio > 1.0 + kViolationMargin)) {
            if (!out.violation) {
                out.violation = true;
                out.violating_record = r;
            }
            return -1.0;
        }
        const bool feasible =
            r.verdict == Verdict::Pass || (!opts.require_hypotheses && r.verdict == Verdict::OutsideHypotheses);
        if (!feasible || !std::isfinite(r.ratio)) return -1.0;
        if (r.ratio > best) {
            best = r.ratio;
            best_point = p;
        }
        return r.ratio;
    }
};

std::vector<double> axis(const Range& r, bool active, int n) {
    if (!active || r.lo == r.hi) return {r.lo};
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = r.lo + (r.hi - r.lo) * i / (n - 1);
    return v;
}

} // namespace

TightnessResult optimize_tightness(Theorem t, const ModelSpec& spec, const TightnessBox& box,
                                   const TightnessOptions& opts) {
    const std::array<bool, 4> active = active_dims(t);
    check_range(box.a, "a");
    check_range(box.b, "b");
    if (active[2]) {
        check_range(box.s, "s");
        if (!(box.s.lo > 0.0 && box.s.hi <= 1.0)) throw OutOfRange("tightness box: s must lie in (0,1]");
    }
    if (active[3]) {
        check_range(box.q, "q");
        const double qmin = t == Theorem::Eq111 ? 1.0 : 1.0 + 1e-12;
        if (!(box.q.lo >= qmin)) throw OutOfRange("tightness box: q below the theorem's range");
    }
    if (opts.coarse_points < 2) throw PreconditionError("tightness: coarse_points must be >= 2");

    const FunctionModel model = build_model(spec);
    TightnessResult out;
    out.theorem = t;
    Search search{model, spec.id.empty() ? model.name() : spec.id, t, opts, out, active};

    const std::array<Range, 4> ranges = {box.a, box.b, box.s, box.q};
    const int n = opts.coarse_points;
    for (double a : axis(box.a, true, n))
        for (double b : axis(box.b, true, n))
            for (double s : axis(box.s, active[2], n))
                for (double q : axis(box.q, active[3], n)) search.eval({a, b, s, q});

    if (search.best < 0.0)
        throw EmptyFeasibleSet("no point of the box is evaluable" +
                               std::string(opts.require_hypotheses ? " with all hypotheses passing" : ""));
    out.best_grid_ratio = search.best;

    // Compass search: poll +-step along each active axis, halve on failure.
    Point step{};
    Point min_step{};
    for (std::size_t d = 0; d < 4; ++d) {
        const double w = ranges[d].hi - ranges[d].lo;
        step[d] = active[d] ? 0.5 * w / (n - 1) : 0.0;
        min_step[d] = opts.min_step_fraction * w;
    }
    auto any_step = [&] {
        for (std::size_t d = 0; d < 4; ++d)
            if (step[d] > min_step[d] && step[d] > 0.0) return true;
        return false;
    };
    while (any_step() && out.trace_length < static_cast<std::size_t>(opts.max_evaluations)) {
        bool improved = false;
        const Point centre = search.best_point;
        for (std::size_t d = 0; d < 4 && !improved; ++d) {
            if (step[d] <= 0.0) continue;
            for (double sign : {1.0, -1.0}) {
                Point p = centre;
                p[d] = std::clamp(p[d] + sign * step[d], ranges[d].lo, ranges[d].hi);
                if (p[d] == centre[d]) continue;
                const double before = search.best;
                search.eval(p);
                if (search.best > before) {
                    improved = true;
                    break;
                }
            }
        }
        if (!improved)
            for (double& st : step) st *= 0.5;
    }

    out.max_ratio = search.best;
    out.a = search.best_point[0];
    out.b = search.best_point[1];
    out.s = active[2] ? search.best_point[2] : kNaN;
    out.q = active[3] ? search.best_point[3] : kNaN;
    return out;
}

} // namespace hhverify
