#include "hhverify/harness.hpp"

#include "hhverify/bounds.hpp"
#include "hhverify/errors.hpp"
#include "hhverify/means.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

namespace hhverify {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr std::array<const char*, 4> kVerdictNames = {"pass", "violation", "outside-hypotheses", "eval-error"};

Flag flag(bool b) { return b ? Flag::True : Flag::False; }

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ' ';
    return s;
}

std::string tag(const std::string& name, const IdentityCheck& c) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s:%s(%.3e)", name.c_str(), to_string(c.status), c.deviation);
    return buf;
}

void append_tag(std::string& tags, const std::string& t) {
    if (!tags.empty()) tags += ';';
    tags += t;
}

void finish(BoundRecord& r) {
    r.gap = r.rhs - r.lhs;
    r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : kNaN;
    const bool gated_out = r.hyp_class == Flag::False || r.hyp_monotone == Flag::False ||
                           r.hyp_fprime_a == Flag::False;
    if (!std::isfinite(r.lhs) || !std::isfinite(r.rhs)) {
        r.verdict = Verdict::EvalError;
        append_tag(r.discrepancy, "nonfinite-side");
    } else if (gated_out) {
        r.verdict = Verdict::OutsideHypotheses;
    } else {
        r.verdict = r.lhs <= r.rhs + kInequalitySlack ? Verdict::Pass : Verdict::Violation;
    }
}

void fail(BoundRecord& r, const std::exception& e) {
    r.verdict = Verdict::EvalError;
    append_tag(r.discrepancy, "error:" + sanitize(e.what()));
}

void apply_report(BoundRecord& r, const HypothesisReport& rep) {
    r.hyp_class = flag(rep.class_ok);
    r.hyp_monotone = flag(rep.monotone_decreasing_ok);
    r.hyp_fprime_a = flag(rep.fprime_a_le_1);
}

std::string fmt_param(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// Uniform double in [0, 1) from the top 53 bits; portable across standard libraries.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

const char* to_string(Verdict v) { return kVerdictNames[static_cast<std::size_t>(v)]; }

Verdict verdict_from_string(const std::string& s) {
    for (std::size_t i = 0; i < kVerdictNames.size(); ++i)
        if (s == kVerdictNames[i]) return static_cast<Verdict>(i);
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

bool BoundRecord::holds() const {
    return std::isfinite(lhs) && std::isfinite(rhs) && lhs <= rhs + kInequalitySlack;
}

BoundRecord evaluate_record(const FunctionModel& m, const std::string& model_id, Theorem t, double a, double b,
                            double s, double q, const EvalSettings& settings) {
    BoundRecord r;
    r.model = model_id;
    r.theorem = t;
    r.a = a;
    r.b = b;
    r.s = (t == Theorem::Eq8 || t == Theorem::Eq9) ? kNaN : s;
    r.q = (t == Theorem::Eq8 || t == Theorem::Eq10) ? kNaN : q;
    r.lhs = kNaN;
    r.rhs = kNaN;
    r.gap = kNaN;
    r.ratio = kNaN;

    const Tolerances& tol = settings.tolerances;
    ClassCheckConfig cc;
    cc.grid_points = settings.grid_points;
    cc.slack = tol.slack;
    cc.s = std::isnan(r.s) ? 1.0 : r.s;
    cc.q = std::isnan(r.q) ? 1.0 : r.q;

    try {
        const double gap = trapezoid_gap(m, a, b, tol.quad_tol);
        r.lhs = std::fabs(gap);
        r.residuals["lemma1"] = std::fabs(gap - lemma1_rhs(m, a, b, tol.quad_tol));

        switch (t) {
        case Theorem::Eq8:
            r.rhs = classical_bound_8(m, a, b);
            r.hyp_class = flag(classical_hypothesis(m, a, b, 1.0, cc).ok);
            break;
        case Theorem::Eq9: {
            const double p = conjugate_exponent(q);
            r.rhs = classical_bound_9(m, a, b, p);
            r.hyp_class = flag(classical_hypothesis(m, a, b, p / (p - 1.0), cc).ok);
            break;
        }
        case Theorem::Eq10:
            r.rhs = rhs_eq10(m, a, b, s);
            apply_report(r, theorem_hypotheses(m, a, b, s, 1.0, cc));
            break;
        case Theorem::Eq11:
            r.rhs = rhs_eq11(m, a, b, s, q);
            apply_report(r, theorem_hypotheses(m, a, b, s, q, cc));
            break;
        case Theorem::Eq111:
            r.rhs = rhs_eq111(m, a, b, s, q);
            apply_report(r, theorem_hypotheses(m, a, b, s, q, cc));
            break;
        default:
            throw PreconditionError("evaluate_record: propositions go through evaluate_proposition");
        }
        finish(r);
    } catch (const std::exception& e) {
        fail(r, e);
    }
    return r;
}

BoundRecord evaluate_proposition(Theorem t, double a, double b, double s, double q, const EvalSettings& settings) {
    BoundRecord r;
    r.model = "power(s=" + fmt_param(s) + ")";
    r.theorem = t;
    r.a = a;
    r.b = b;
    r.s = s;
    r.q = t == Theorem::Prop41 ? kNaN : q;
    r.lhs = r.rhs = r.gap = r.ratio = kNaN;

    const Tolerances& tol = settings.tolerances;
    ClassCheckConfig cc;
    cc.grid_points = settings.grid_points;
    cc.slack = tol.slack;
    cc.s = s;
    cc.q = t == Theorem::Prop41 ? 1.0 : q;

    try {
        const IdentityCheck aa = identity_aa_check(a, b, s, tol.identity_tol);
        r.residuals["aa"] = aa.residual;
        if (aa.status == IdentityStatus::Discrepant) append_tag(r.discrepancy, tag("aa", aa));

        r.lhs = prop_lhs(a, b, s);
        double dual = kNaN;
        switch (t) {
        case Theorem::Prop41: {
            const IdentityCheck bb = identity_bb_check(a, b, s, tol.identity_tol);
            r.residuals["bb"] = bb.deviation;
            if (bb.status == IdentityStatus::Discrepant) append_tag(r.discrepancy, tag("bb", bb));
            dual = prop_rhs_41_bounds_path(a, b, s);
            r.rhs = prop_rhs_41(a, b, s);
            break;
        }
        case Theorem::Prop32: {
            const IdentityCheck c = identity_cc_check(a, b, s, q, tol.identity_tol);
            r.residuals["cc"] = c.residual;
            if (c.status == IdentityStatus::Discrepant) append_tag(r.discrepancy, tag("cc", c));
            dual = prop_rhs_32_bounds_path(a, b, s, q);
            r.rhs = prop_rhs_32(a, b, s, q);
            break;
        }
        case Theorem::Prop33: {
            const IdentityCheck du = check_U(a, b, s, q, tol.identity_tol);
            const IdentityCheck ev = check_V(a, b, s, q, tol.identity_tol);
            r.residuals["dd"] = du.deviation;
            r.residuals["ee"] = ev.deviation;
            if (du.status == IdentityStatus::Discrepant) append_tag(r.discrepancy, tag("dd", du));
            if (ev.status == IdentityStatus::Discrepant) append_tag(r.discrepancy, tag("ee", ev));
            dual = prop_rhs_33_bounds_path(a, b, s, q);
            try {
                r.rhs = prop_rhs_33(a, b, s, q);
            } catch (const OutOfRange& e) {
                r.residuals["rhs_dual"] = kNaN;
                apply_report(r, theorem_hypotheses(make_power_model(s, {a, b}), a, b, s, cc.q, cc));
                fail(r, e);
                return r;
            }
            break;
        }
        default:
            throw PreconditionError("evaluate_proposition: not a proposition tag");
        }
        IdentityCheck rd{dual, r.rhs, std::fabs(dual - r.rhs), 0.0, IdentityStatus::Consistent};
        rd.deviation = rd.residual / std::max(1e-300, std::fabs(dual));
        rd.status = rd.deviation <= tol.identity_tol ? IdentityStatus::Consistent : IdentityStatus::Discrepant;
        r.residuals["rhs_dual"] = rd.deviation;
        if (rd.status == IdentityStatus::Discrepant) append_tag(r.discrepancy, tag("rhs-dual", rd));

        apply_report(r, theorem_hypotheses(make_power_model(s, {a, b}), a, b, s, cc.q, cc));
        finish(r);
    } catch (const std::exception& e) {
        fail(r, e);
    }
    return r;
}

// ---------------------------------------------------------------------------

std::size_t SweepSummary::violations() const {
    std::size_t n = lemma1_failures;
    for (const auto& [_, t] : by_theorem) n += t.violation;
    return n;
}

namespace {

using Task = std::function<std::vector<BoundRecord>()>;

std::vector<BoundRecord> run_tasks(const std::vector<Task>& tasks) {
    std::vector<std::vector<BoundRecord>> out(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) out[i] = tasks[i]();
    };
    const unsigned n = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16u));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<BoundRecord> flat;
    for (auto& v : out)
        for (auto& r : v) flat.push_back(std::move(r));
    return flat;
}

double sort_value(double v) { return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v; }

void canonical_sort(std::vector<BoundRecord>& rs) {
    std::stable_sort(rs.begin(), rs.end(), [](const BoundRecord& x, const BoundRecord& y) {
        return std::make_tuple(x.model, static_cast<int>(x.theorem), x.a, x.b, sort_value(x.s), sort_value(x.q)) <
               std::make_tuple(y.model, static_cast<int>(y.theorem), y.a, y.b, sort_value(y.s), sort_value(y.q));
    });
}

} // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const EvalSettings settings{cfg.tolerances, cfg.grid_points};

    std::vector<FunctionModel> models;
    for (const ModelSpec& spec : cfg.models) models.push_back(build_model(spec));

    std::vector<Task> tasks;
    for (std::size_t i = 0; i < models.size(); ++i) {
        const ModelSpec& spec = cfg.models[i];
        const auto& ag = spec.a_grid.empty() ? cfg.a_grid : spec.a_grid;
        const auto& bg = spec.b_grid.empty() ? cfg.b_grid : spec.b_grid;
        for (double a : ag) {
            for (double b : bg) {
                if (!(a < b) || !models[i].domain().contains(Interval{a, b})) continue;
                tasks.push_back([&, i, a, b] {
                    const FunctionModel& m = models[i];
                    const std::string& id = cfg.models[i].id;
                    std::vector<BoundRecord> rs;
                    for (Theorem t : cfg.theorems) {
                        switch (t) {
                        case Theorem::Eq8:
                            rs.push_back(evaluate_record(m, id, t, a, b, kNaN, kNaN, settings));
                            break;
                        case Theorem::Eq9:
                            for (double q : cfg.q_grid)
                                if (q > 1.0) rs.push_back(evaluate_record(m, id, t, a, b, kNaN, q, settings));
                            break;
                        case Theorem::Eq10:
                            for (double s : cfg.s_grid) rs.push_back(evaluate_record(m, id, t, a, b, s, kNaN, settings));
                            break;
                        case Theorem::Eq11:
                        case Theorem::Eq111:
                            for (double s : cfg.s_grid)
                                for (double q : cfg.q_grid)
                                    if (q > 1.0 || t == Theorem::Eq111)
                                        rs.push_back(evaluate_record(m, id, t, a, b, s, q, settings));
                            break;
                        default:
                            break;
                        }
                    }
                    return rs;
                });
            }
        }
    }

    if (cfg.propositions) {
        const PropositionGrid& pg = *cfg.propositions;
        for (double a : pg.a_grid) {
            for (double b : pg.b_grid) {
                if (!(a < b)) continue;
                for (double s : pg.s_grid) {
                    tasks.push_back([&, a, b, s] {
                        std::vector<BoundRecord> rs;
                        rs.push_back(evaluate_proposition(Theorem::Prop41, a, b, s, kNaN, settings));
                        for (double q : pg.q_grid)
                            if (q > 1.0) rs.push_back(evaluate_proposition(Theorem::Prop32, a, b, s, q, settings));
                        for (double q : pg.q_grid)
                            rs.push_back(evaluate_proposition(Theorem::Prop33, a, b, s, q, settings));
                        return rs;
                    });
                }
            }
        }
    }

    SweepResult result;
    result.records = run_tasks(tasks);
    canonical_sort(result.records);

    SweepSummary& sum = result.summary;
    for (const BoundRecord& r : result.records) {
        TheoremTally& t = sum.by_theorem[to_string(r.theorem)];
        switch (r.verdict) {
        case Verdict::Pass:
            ++t.pass;
            break;
        case Verdict::Violation:
            ++t.violation;
            break;
        case Verdict::OutsideHypotheses:
            ++t.outside;
            break;
        case Verdict::EvalError:
            ++t.eval_error;
            break;
        }
        if (std::isfinite(r.lhs) && std::isfinite(r.rhs)) {
            ++t.evaluated;
            if (r.holds()) ++t.holds;
        }
        for (const char* key : {"aa", "bb", "cc", "dd", "ee", "rhs_dual"}) {
            auto it = r.residuals.find(key);
            if (it == r.residuals.end()) continue;
            const std::string label = std::string(key) + (key == std::string("rhs_dual") ? "/" + std::string(to_string(r.theorem)) : "");
            const bool ok = std::isfinite(it->second) && it->second <= cfg.tolerances.identity_tol;
            ++sum.identity_status[label][ok ? 0 : 1];
        }
    }

    // Lemma identity on seeded random (a, b) pairs inside each model domain.
    for (std::size_t i = 0; i < models.size(); ++i) {
        std::mt19937_64 rng(cfg.seed + 0x9e3779b97f4a7c15ULL * (i + 1));
        const Interval d = models[i].domain();
        double worst = 0.0;
        for (int k = 0; k < cfg.lemma_pairs; ++k) {
            double x = d.lo + (d.hi - d.lo) * unit_draw(rng);
            double y = d.lo + (d.hi - d.lo) * unit_draw(rng);
            if (x > y) std::swap(x, y);
            if (!(x < y)) continue;
            try {
                const double res = std::fabs(trapezoid_gap(models[i], x, y, cfg.tolerances.quad_tol) -
                                             lemma1_rhs(models[i], x, y, cfg.tolerances.quad_tol));
                worst = std::max(worst, res);
                if (!(res <= 1e-8)) ++sum.lemma1_failures;
            } catch (const std::exception&) {
                ++sum.lemma1_failures;
            }
        }
        sum.lemma1_max_residual[cfg.models[i].id] = worst;
    }
    return result;
}

std::string format_summary(const SweepSummary& s) {
    std::ostringstream os;
    char line[256];
    os << "theorem   pass  violation  outside  eval-error  empirical-holds\n";
    for (const auto& [name, t] : s.by_theorem) {
        const double rate = t.evaluated ? static_cast<double>(t.holds) / static_cast<double>(t.evaluated) : 0.0;
        std::snprintf(line, sizeof line, "%-8s %5zu %10zu %8zu %11zu   %zu/%zu (%.1f%%)\n", name.c_str(), t.pass,
                      t.violation, t.outside, t.eval_error, t.holds, t.evaluated, 100.0 * rate);
        os << line;
    }
    if (!s.identity_status.empty()) {
        os << "identity checks (consistent/discrepant):\n";
        for (const auto& [name, c] : s.identity_status) {
            std::snprintf(line, sizeof line, "  %-16s %zu/%zu\n", name.c_str(), c[0], c[1]);
            os << line;
        }
    }
    os << "lemma identity, max residual over random pairs:\n";
    for (const auto& [model, r] : s.lemma1_max_residual) {
        std::snprintf(line, sizeof line, "  %-32s %.3e\n", model.c_str(), r);
        os << line;
    }
    std::snprintf(line, sizeof line, "violations: %zu\n", s.violations());
    os << line;
    return os.str();
}

} // namespace hhverify
