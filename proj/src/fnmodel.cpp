#include "hhverify/fnmodel.hpp"

#include "hhverify/errors.hpp"
#include "hhverify/expr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hhverify {

namespace {

std::string fmt_param(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void validate_domain(const Interval& d) {
    if (!(d.lo > 0.0 && d.lo < d.hi && std::isfinite(d.hi)))
        throw PreconditionError("model domain must satisfy 0 < lo < hi < inf");
}

// Hand-built models may touch the origin (e.g. x^2 on [0,1]).
void validate_closed_domain(const Interval& d) {
    if (!(d.lo >= 0.0 && d.lo < d.hi && std::isfinite(d.hi)))
        throw PreconditionError("model domain must satisfy 0 <= lo < hi < inf");
}

void probe_finite(const FunctionModel& m) {
    for (double x : chebyshev_probe(m.domain())) {
        if (!std::isfinite(m.f(x))) throw DomainError(x, m.name() + ": f is not finite at probe point");
        if (!std::isfinite(m.fprime(x))) throw DomainError(x, m.name() + ": f' is not finite at probe point");
    }
}

} // namespace

FunctionModel::FunctionModel(std::string name, Interval domain, RealFn f, RealFn fprime)
    : name_(std::move(name)), domain_(domain), f_(std::move(f)), fprime_(std::move(fprime)) {
    validate_closed_domain(domain_);
}

std::vector<double> chebyshev_probe(const Interval& domain, int points) {
    if (points < 1) throw PreconditionError("chebyshev_probe: need at least one point");
    const double mid = 0.5 * (domain.lo + domain.hi);
    const double half = 0.5 * (domain.hi - domain.lo);
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(points) + 2);
    xs.push_back(domain.lo);
    for (int k = 0; k < points; ++k) {
        double theta = std::numbers::pi * (2.0 * k + 1.0) / (2.0 * points);
        xs.push_back(std::clamp(mid - half * std::cos(theta), domain.lo, domain.hi));
    }
    xs.push_back(domain.hi);
    std::sort(xs.begin(), xs.end());
    return xs;
}

FunctionModel make_power_model(double s, Interval domain) {
    validate_domain(domain);
    if (!(s > 0.0 && s < 1.0)) throw OutOfRange("power model: s must lie in (0,1)");
    if (domain.hi > 1.0) throw PreconditionError("power model: domain must lie inside (0,1]");
    FunctionModel m(
        "power(s=" + fmt_param(s) + ")", domain, [s](double x) { return std::pow(x, s) / s; },
        [s](double x) { return std::pow(x, s - 1.0); });
    probe_finite(m);
    return m;
}

FunctionModel make_exp_model(double lambda, Interval domain) {
    validate_domain(domain);
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw OutOfRange("exp model: lambda must be positive");
    FunctionModel m(
        "exp(lambda=" + fmt_param(lambda) + ")", domain, [lambda](double x) { return std::exp(-lambda * x); },
        [lambda](double x) { return -lambda * std::exp(-lambda * x); });
    probe_finite(m);
    return m;
}

FunctionModel make_log_model(double c, Interval domain) {
    validate_domain(domain);
    if (!(c > 0.0) || !std::isfinite(c)) throw OutOfRange("log model: c must be positive");
    FunctionModel m(
        "log(c=" + fmt_param(c) + ")", domain, [c](double x) { return c * std::log(x); },
        [c](double x) { return c / x; });
    probe_finite(m);
    return m;
}

FunctionModel make_affine_model(double slope, double intercept, Interval domain) {
    validate_domain(domain);
    FunctionModel m(
        "affine(slope=" + fmt_param(slope) + ",intercept=" + fmt_param(intercept) + ")", domain,
        [slope, intercept](double x) { return slope * x + intercept; }, [slope](double) { return slope; });
    probe_finite(m);
    return m;
}

FunctionModel model_from_expr(const std::string& fsrc, Interval domain) {
    validate_domain(domain);
    Expr f = parse(fsrc);
    Expr df = differentiate(f);
    FunctionModel m(
        "expr(" + fsrc + ")", domain, [f](double x) { return evaluate(f, x); },
        [df](double x) { return evaluate(df, x); });
    probe_finite(m);
    return m;
}

} // namespace hhverify
