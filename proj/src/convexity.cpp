#include "hhverify/convexity.hpp"

#include <algorithm>
#include <cmath>

namespace hhverify {

NegativeValue::NegativeValue(double x, double gx)
    : PreconditionError("function takes negative value " + std::to_string(gx) + " at x=" + std::to_string(x)),
      x_(x) {}

NonPositiveValue::NonPositiveValue(double x, double gx)
    : PreconditionError("function takes nonpositive value " + std::to_string(gx) + " at x=" + std::to_string(x)),
      x_(x) {}

namespace {

constexpr double kLogScaleThreshold = 1e3;

void validate(const Interval& iv, const ClassCheckConfig& cfg) {
    if (cfg.grid_points < 3) throw PreconditionError("class check: grid_points must be >= 3");
    if (!(cfg.slack >= 0.0)) throw PreconditionError("class check: slack must be >= 0");
    if (!(iv.lo < iv.hi)) throw PreconditionError("class check: interval must satisfy lo < hi");
}

void validate_s(double s) {
    if (!(s > 0.0 && s <= 1.0)) throw OutOfRange("class check: s must lie in (0,1]");
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    v.back() = hi;
    return v;
}

// t grid always contains 0, 1/2 and 1.
std::vector<double> t_grid(int n) {
    std::vector<double> t = linspace(0.0, 1.0, n);
    if (std::find(t.begin(), t.end(), 0.5) == t.end()) {
        t.push_back(0.5);
        std::sort(t.begin(), t.end());
    }
    return t;
}

bool holds(double lhs, double rhs, double slack) {
    if (lhs > kLogScaleThreshold && rhs > kLogScaleThreshold) return std::log(lhs) <= std::log(rhs) + slack;
    return lhs <= rhs + slack;
}

// Same as holds() with the right side known only through its logarithm.
bool holds_log(double lhs, double log_rhs, double slack, double& rhs_out) {
    rhs_out = std::exp(log_rhs);
    if (lhs > kLogScaleThreshold && rhs_out > kLogScaleThreshold) return std::log(lhs) <= log_rhs + slack;
    return lhs <= rhs_out + slack;
}

template <class Rhs>
ClassCheck arithmetic_check(const RealFn& g, const Interval& iv, const ClassCheckConfig& cfg, Rhs rhs_of) {
    const auto xs = linspace(iv.lo, iv.hi, cfg.grid_points);
    const auto ts = t_grid(cfg.grid_points);
    std::vector<double> gx(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) gx[i] = g(xs[i]);

    ClassCheck out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < xs.size(); ++j) {
            for (double t : ts) {
                const double z = std::clamp(t * xs[i] + (1.0 - t) * xs[j], std::min(xs[i], xs[j]),
                                            std::max(xs[i], xs[j]));
                const double lhs = g(z);
                const double rhs = rhs_of(t, gx[i], gx[j]);
                ++out.checked;
                if (!holds(lhs, rhs, cfg.slack)) out.witnesses.push_back({xs[i], xs[j], t, lhs, rhs});
            }
        }
    }
    out.ok = out.witnesses.empty();
    return out;
}

} // namespace

ClassCheck is_convex(const RealFn& g, const Interval& iv, const ClassCheckConfig& cfg) {
    validate(iv, cfg);
    return arithmetic_check(g, iv, cfg, [](double t, double gx, double gy) { return t * gx + (1.0 - t) * gy; });
}

ClassCheck is_s_convex(const RealFn& g, const Interval& iv, double s, const ClassCheckConfig& cfg) {
    validate(iv, cfg);
    validate_s(s);
    for (double x : linspace(iv.lo, iv.hi, cfg.grid_points)) {
        const double gx = g(x);
        if (gx < -cfg.slack) throw NegativeValue(x, gx);
    }
    return arithmetic_check(g, iv, cfg, [s](double t, double gx, double gy) {
        return std::pow(t, s) * gx + std::pow(1.0 - t, s) * gy;
    });
}

ClassCheck is_s_geometrically_convex(const RealFn& g, const Interval& iv, double s, const ClassCheckConfig& cfg) {
    validate(iv, cfg);
    validate_s(s);
    if (!(iv.lo > 0.0)) throw PreconditionError("geometric convexity needs a positive interval");

    const auto xs = linspace(iv.lo, iv.hi, cfg.grid_points);
    const auto ts = t_grid(cfg.grid_points);
    std::vector<double> log_gx(xs.size()), log_x(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double v = g(xs[i]);
        if (!(v > 0.0)) throw NonPositiveValue(xs[i], v);
        log_gx[i] = std::log(v);
        log_x[i] = std::log(xs[i]);
    }

    ClassCheck out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < xs.size(); ++j) {
            const double zlo = std::min(xs[i], xs[j]);
            const double zhi = std::max(xs[i], xs[j]);
            for (double t : ts) {
                const double z = std::clamp(std::exp(t * log_x[i] + (1.0 - t) * log_x[j]), zlo, zhi);
                const double lhs = g(z);
                if (!(lhs > 0.0)) throw NonPositiveValue(z, lhs);
                const double log_rhs = std::pow(t, s) * log_gx[i] + std::pow(1.0 - t, s) * log_gx[j];
                double rhs = 0.0;
                ++out.checked;
                if (!holds_log(lhs, log_rhs, cfg.slack, rhs)) out.witnesses.push_back({xs[i], xs[j], t, lhs, rhs});
            }
        }
    }
    out.ok = out.witnesses.empty();
    return out;
}

ClassCheck is_geometrically_convex(const RealFn& g, const Interval& iv, const ClassCheckConfig& cfg) {
    validate(iv, cfg);
    if (!(iv.lo > 0.0)) throw PreconditionError("geometric convexity needs a positive interval");

    const auto xs = linspace(iv.lo, iv.hi, cfg.grid_points);
    const auto ts = t_grid(cfg.grid_points);
    std::vector<double> gx(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        gx[i] = g(xs[i]);
        if (!(gx[i] > 0.0)) throw NonPositiveValue(xs[i], gx[i]);
    }

    ClassCheck out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < xs.size(); ++j) {
            for (double t : ts) {
                const double z = std::clamp(std::pow(xs[i], t) * std::pow(xs[j], 1.0 - t), std::min(xs[i], xs[j]),
                                            std::max(xs[i], xs[j]));
                const double lhs = g(z);
                if (!(lhs > 0.0)) throw NonPositiveValue(z, lhs);
                const double rhs = std::pow(gx[i], t) * std::pow(gx[j], 1.0 - t);
                ++out.checked;
                if (!holds(lhs, rhs, cfg.slack)) out.witnesses.push_back({xs[i], xs[j], t, lhs, rhs});
            }
        }
    }
    out.ok = out.witnesses.empty();
    return out;
}

ClassCheck is_monotone_decreasing(const RealFn& g, const Interval& iv, const ClassCheckConfig& cfg) {
    validate(iv, cfg);
    const auto xs = linspace(iv.lo, iv.hi, cfg.grid_points);
    ClassCheck out;
    double prev = g(xs.front());
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double cur = g(xs[i]);
        ++out.checked;
        if (cur > prev + cfg.slack) out.witnesses.push_back({xs[i - 1], xs[i], 0.0, cur, prev});
        prev = cur;
    }
    out.ok = out.witnesses.empty();
    return out;
}

bool check_pointwise_key(double mu, double alpha, double s) {
    auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
    if (!in_unit(mu) || !in_unit(alpha) || !in_unit(s))
        throw OutOfRange("check_pointwise_key: mu, alpha and s must lie in (0,1]");
    return std::pow(mu, std::pow(alpha, s)) <= std::pow(mu, alpha * s);
}

const char* to_string(Flag f) {
    switch (f) {
    case Flag::True:
        return "true";
    case Flag::False:
        return "false";
    case Flag::NotApplicable:
        break;
    }
    return "na";
}

HypothesisReport theorem_hypotheses(const FunctionModel& m, double a, double b, double s, double q,
                                    const ClassCheckConfig& cfg) {
    if (!(a < b)) throw PreconditionError("theorem_hypotheses: requires a < b");
    if (!m.domain().contains(Interval{a, b}))
        throw PreconditionError("theorem_hypotheses: [a,b] must lie inside the model domain");
    if (!(q >= 1.0)) throw OutOfRange("theorem_hypotheses: q must be >= 1");
    validate_s(s);

    HypothesisReport rep;
    rep.a = a;
    rep.b = b;
    rep.s = s;
    rep.q = q;
    const Interval iv{a, b};
    auto abs_fp = [&m](double x) { return std::fabs(m.fprime(x)); };
    auto abs_fp_q = [&m, q](double x) { return std::pow(std::fabs(m.fprime(x)), q); };

    try {
        ClassCheck cls = is_s_geometrically_convex(abs_fp_q, iv, s, cfg);
        rep.class_ok = cls.ok;
        rep.class_witnesses = std::move(cls.witnesses);
    } catch (const NonPositiveValue& e) {
        rep.class_ok = false;
        rep.note = std::string("class check not applicable: ") + e.what();
    }

    ClassCheck mono = is_monotone_decreasing(abs_fp, iv, cfg);
    rep.monotone_decreasing_ok = mono.ok;
    rep.monotone_witnesses = std::move(mono.witnesses);

    rep.fprime_a_abs = abs_fp(a);
    rep.fprime_a_le_1 = rep.fprime_a_abs <= 1.0 + cfg.slack;
    return rep;
}

ClassCheck classical_hypothesis(const FunctionModel& m, double a, double b, double r, const ClassCheckConfig& cfg) {
    if (!(a < b)) throw PreconditionError("classical_hypothesis: requires a < b");
    if (!m.domain().contains(Interval{a, b}))
        throw PreconditionError("classical_hypothesis: [a,b] must lie inside the model domain");
    return is_convex([&m, r](double x) { return std::pow(std::fabs(m.fprime(x)), r); }, Interval{a, b}, cfg);
}

} // namespace hhverify
